"""Generated by suspended_pfl._kinematics; do not edit."""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def full_kinematics_flat(q, l1, l2):
    q1 = q[0]
    q2 = q[1]
    q3 = q[2]
    q4 = q[3]
    q5 = q[4]
    x0 = math.sin(q1)
    x1 = math.cos(q2)
    x2 = l1*x1
    x3 = x0*x2
    x4 = math.sin(q2)
    x5 = l1*x4
    x6 = math.cos(q1)
    x7 = x2*x6
    x8 = math.sin(q5)
    x9 = math.sin(q3)
    x10 = x6*x9
    x11 = math.cos(q3)
    x12 = x0*x11
    x13 = x12*x4
    x14 = x10 + x13
    x15 = -x14
    x16 = math.cos(q5)
    x17 = math.cos(q4)
    x18 = x1*x17
    x19 = x0*x18
    x20 = math.sin(q4)
    x21 = x0*x9
    x22 = -x11*x6 + x21*x4
    x23 = -x22
    x24 = x19 + x20*x23
    x25 = -x24
    x26 = -x15*x8 + x16*x25
    x27 = -l2*x26 + x3
    x28 = x1*x11
    x29 = x28*x8
    x30 = x17*x4
    x31 = x1*x9
    x32 = x20*x31
    x33 = x30 + x32
    x34 = -x33
    x35 = x16*x34 - x29
    x36 = -x11*x4*x6 + x21
    x37 = -x36
    x38 = x37*x8
    x39 = x18*x6
    x40 = -x39
    x41 = x10*x4 + x12
    x42 = x20*x41 + x40
    x43 = -x42
    x44 = x16*x43 - x38
    x45 = x0*x5
    x46 = -x45
    x47 = x5*x6
    x48 = x36*x8
    x49 = -x41
    x50 = x20*x49
    x51 = -x39 - x50
    x52 = -l2*(x16*x51 - x48) + x7
    x53 = x1*x8
    x54 = x1*x20
    x55 = x0*x30 + x21*x54
    x56 = -l2*(x12*x53 + x16*x55) - x45
    x57 = x15*x16
    x58 = -l2*(-x20*x57 - x22*x8)
    x59 = x0*x1*x20 - x17*x23
    x60 = l2*x16
    x61 = -x59*x60
    x62 = -l2*(-x25*x8 - x57)
    x63 = x11*x4
    x64 = x20*x4
    x65 = -x18 + x64*x9
    x66 = x16*x28
    x67 = -x18*x9 + x64
    x68 = x11*x6
    x69 = x53*x68
    x70 = x10*x54 + x30*x6
    x71 = -x70
    x72 = x16*x37
    x73 = x54*x6
    x74 = -x17*x41 - x73
    x75 = -x28
    x76 = -x9
    x77 = -x3
    x78 = -x47
    x79 = x14*x8
    x80 = -x19
    x81 = x20*x22
    x82 = -l2*(x16*x70 + x69) - x47
    x83 = x16*x36
    x84 = -l2*(-x20*x83 - x41*x8)
    x85 = -x60*(-x17*x49 + x73)
    x86 = -l2*(-x51*x8 - x83)
    x87 = -l2*(x0*x1*x11*x16*x20 - x21*x53)
    x88 = -x60*(x0*x1*x17*x9 - x0*x64)
    x89 = -l2*(x0*x1*x11*x16 - x55*x8)
    x90 = x16*x33
    x91 = x4*x9
    x92 = -l2*(x11*x16*x20*x4 - x8*x91)
    x93 = -x60*(x30*x9 + x54)
    x94 = -l2*(x11*x16*x4 - x65*x8)
    x95 = -l2*(x10*x53 - x16*x54*x68)
    x96 = -x60*(-x10*x18 + x6*x64)
    x97 = -l2*(-x1*x16*x68 - x71*x8)
    x98 = l2*x17
    x99 = x57*x98
    x100 = -l2*(x15*x20*x8 - x16*x22)
    x101 = x11*x18*x60
    x102 = -l2*(x16*x31 + x20*x29)
    x103 = x72*x98
    x104 = -l2*(-x16*x49 + x20*x38)
    x105 = l2*x8
    x106 = x105*x59
    x107 = x105*x67
    x108 = x105*x74
    out = np.empty(276)
    out[0] = x3
    out[1] = x5
    out[2] = -x7
    out[3] = x27
    out[4] = -l2*x35 + x5
    out[5] = -l2*x44 - x7
    out[6] = x7
    out[7] = x46
    out[8] = 0
    out[9] = 0
    out[10] = 0
    out[11] = 0
    out[12] = x2
    out[13] = 0
    out[14] = 0
    out[15] = 0
    out[16] = x3
    out[17] = x47
    out[18] = 0
    out[19] = 0
    out[20] = 0
    out[21] = x52
    out[22] = x56
    out[23] = x58
    out[24] = x61
    out[25] = x62
    out[26] = 0
    out[27] = -l2*(x16*x65 + x63*x8) + x2
    out[28] = -l2*(-x20*x66 + x31*x8)
    out[29] = -x60*x67
    out[30] = -l2*(-x34*x8 - x66)
    out[31] = x27
    out[32] = -l2*(x16*x71 - x69) + x47
    out[33] = -l2*(-x20*x72 - x49*x8)
    out[34] = -x60*x74
    out[35] = -l2*(-x43*x8 - x72)
    out[36] = -x31
    out[37] = x11
    out[38] = 0
    out[39] = 0
    out[40] = 0
    out[41] = x75
    out[42] = x76
    out[43] = 0
    out[44] = 0
    out[45] = 0
    out[46] = x4
    out[47] = 0
    out[48] = 1
    out[49] = 0
    out[50] = 0
    out[51] = x77
    out[52] = x78
    out[53] = 0
    out[54] = 0
    out[55] = 0
    out[56] = 0
    out[57] = 0
    out[58] = 0
    out[59] = 0
    out[60] = 0
    out[61] = x7
    out[62] = x46
    out[63] = 0
    out[64] = 0
    out[65] = 0
    out[66] = x78
    out[67] = x77
    out[68] = 0
    out[69] = 0
    out[70] = 0
    out[71] = 0
    out[72] = -x5
    out[73] = 0
    out[74] = 0
    out[75] = 0
    out[76] = x46
    out[77] = x7
    out[78] = 0
    out[79] = 0
    out[80] = 0
    out[81] = 0
    out[82] = 0
    out[83] = 0
    out[84] = 0
    out[85] = 0
    out[86] = 0
    out[87] = 0
    out[88] = 0
    out[89] = 0
    out[90] = 0
    out[91] = 0
    out[92] = 0
    out[93] = 0
    out[94] = 0
    out[95] = 0
    out[96] = 0
    out[97] = 0
    out[98] = 0
    out[99] = 0
    out[100] = 0
    out[101] = 0
    out[102] = 0
    out[103] = 0
    out[104] = 0
    out[105] = 0
    out[106] = 0
    out[107] = 0
    out[108] = 0
    out[109] = 0
    out[110] = 0
    out[111] = 0
    out[112] = 0
    out[113] = 0
    out[114] = 0
    out[115] = 0
    out[116] = 0
    out[117] = 0
    out[118] = 0
    out[119] = 0
    out[120] = 0
    out[121] = 0
    out[122] = 0
    out[123] = 0
    out[124] = 0
    out[125] = 0
    out[126] = -l2*(x16*(-x80 - x81) - x79) - x3
    out[127] = x82
    out[128] = x84
    out[129] = x85
    out[130] = x86
    out[131] = 0
    out[132] = 0
    out[133] = 0
    out[134] = 0
    out[135] = 0
    out[136] = x52
    out[137] = x56
    out[138] = x58
    out[139] = x61
    out[140] = x62
    out[141] = x82
    out[142] = -l2*(-x13*x8 + x16*(-x21*x64 - x80)) - x3
    out[143] = x87
    out[144] = x88
    out[145] = x89
    out[146] = 0
    out[147] = -l2*(x29 + x90) - x5
    out[148] = x92
    out[149] = x93
    out[150] = x94
    out[151] = x56
    out[152] = -l2*(x16*(x10*x64 + x40) + x4*x68*x8) + x7
    out[153] = x95
    out[154] = x96
    out[155] = x97
    out[156] = x84
    out[157] = x87
    out[158] = -l2*(-x16*x81 - x79)
    out[159] = x99
    out[160] = x100
    out[161] = 0
    out[162] = x92
    out[163] = -l2*(x16*x32 + x29)
    out[164] = x101
    out[165] = x102
    out[166] = x58
    out[167] = x95
    out[168] = -l2*(-x16*x50 - x48)
    out[169] = x103
    out[170] = x104
    out[171] = x85
    out[172] = x88
    out[173] = x99
    out[174] = -x24*x60
    out[175] = x106
    out[176] = 0
    out[177] = x93
    out[178] = x101
    out[179] = -l2*x90
    out[180] = x107
    out[181] = x61
    out[182] = x96
    out[183] = x103
    out[184] = -x42*x60
    out[185] = x108
    out[186] = x86
    out[187] = x89
    out[188] = x100
    out[189] = x106
    out[190] = l2*x26
    out[191] = 0
    out[192] = x94
    out[193] = x102
    out[194] = x107
    out[195] = l2*x35
    out[196] = x62
    out[197] = x97
    out[198] = x104
    out[199] = x108
    out[200] = l2*x44
    out[201] = 0
    out[202] = 0
    out[203] = 0
    out[204] = 0
    out[205] = 0
    out[206] = 0
    out[207] = 0
    out[208] = 0
    out[209] = 0
    out[210] = 0
    out[211] = 0
    out[212] = 0
    out[213] = 0
    out[214] = 0
    out[215] = 0
    out[216] = x91
    out[217] = 0
    out[218] = 0
    out[219] = 0
    out[220] = 0
    out[221] = x63
    out[222] = 0
    out[223] = 0
    out[224] = 0
    out[225] = 0
    out[226] = x1
    out[227] = 0
    out[228] = 0
    out[229] = 0
    out[230] = 0
    out[231] = x75
    out[232] = x76
    out[233] = 0
    out[234] = 0
    out[235] = 0
    out[236] = x31
    out[237] = -x11
    out[238] = 0
    out[239] = 0
    out[240] = 0
    out[241] = 0
    out[242] = 0
    out[243] = 0
    out[244] = 0
    out[245] = 0
    out[246] = 0
    out[247] = 0
    out[248] = 0
    out[249] = 0
    out[250] = 0
    out[251] = 0
    out[252] = 0
    out[253] = 0
    out[254] = 0
    out[255] = 0
    out[256] = 0
    out[257] = 0
    out[258] = 0
    out[259] = 0
    out[260] = 0
    out[261] = 0
    out[262] = 0
    out[263] = 0
    out[264] = 0
    out[265] = 0
    out[266] = 0
    out[267] = 0
    out[268] = 0
    out[269] = 0
    out[270] = 0
    out[271] = 0
    out[272] = 0
    out[273] = 0
    out[274] = 0
    out[275] = 0
    return out


@njit(cache=True)
def planar_kinematics_flat(q, l1, l2):
    q1 = q[0]
    q2 = q[1]
    x0 = l1*math.sin(q1)
    x1 = l1*math.cos(q1)
    x2 = q1 + q2
    x3 = l2*math.sin(x2)
    x4 = x0 + x3
    x5 = l2*math.cos(x2)
    x6 = x1 + x5
    x7 = -x3
    out = np.empty(34)
    out[0] = x0
    out[1] = -x1
    out[2] = x4
    out[3] = -x6
    out[4] = x1
    out[5] = 0
    out[6] = x0
    out[7] = 0
    out[8] = x6
    out[9] = x5
    out[10] = x4
    out[11] = x3
    out[12] = 1
    out[13] = 0
    out[14] = -x0
    out[15] = 0
    out[16] = x1
    out[17] = 0
    out[18] = 0
    out[19] = 0
    out[20] = 0
    out[21] = 0
    out[22] = -x4
    out[23] = x7
    out[24] = x6
    out[25] = x5
    out[26] = x7
    out[27] = x7
    out[28] = x5
    out[29] = x5
    out[30] = 0
    out[31] = 0
    out[32] = 0
    out[33] = 0
    return out
