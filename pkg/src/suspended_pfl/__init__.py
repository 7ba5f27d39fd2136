"""Cable-suspended aerial platform with a swinging load: dynamics, PFL control, simulation."""
