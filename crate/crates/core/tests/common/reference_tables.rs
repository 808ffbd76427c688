// Published reference values used by the acceptance suite.

// (r, n_cp, JS, M(1), M(2), IM order, IM k_min, MAIM order, MAIM k_min); k = 0 means none
pub const TABLE1: [[u32; 9]; 44] = [
    [2, 0, 3, 3, 3, 3, 2, 3, 1],
    [2, 1, 1, 1, 1, 1, 0, 1, 0],
    [3, 0, 5, 5, 5, 5, 2, 5, 1],
    [3, 1, 3, 5, 5, 5, 2, 5, 1],
    [3, 2, 2, 2, 2, 2, 0, 2, 0],
    [4, 0, 7, 7, 7, 7, 2, 7, 1],
    [4, 1, 5, 7, 7, 7, 2, 7, 1],
    [4, 2, 4, 6, 7, 7, 4, 7, 3],
    [4, 3, 3, 3, 3, 3, 0, 3, 0],
    [5, 0, 9, 9, 9, 9, 2, 9, 1],
    [5, 1, 7, 9, 9, 9, 2, 9, 1],
    [5, 2, 6, 9, 9, 9, 2, 9, 1],
    [5, 3, 5, 7, 9, 9, 4, 9, 3],
    [5, 4, 4, 4, 4, 4, 0, 4, 0],
    [6, 0, 11, 11, 11, 11, 2, 11, 1],
    [6, 1, 9, 11, 11, 11, 2, 11, 1],
    [6, 2, 8, 11, 11, 11, 2, 11, 1],
    [6, 3, 7, 11, 11, 11, 2, 11, 1],
    [6, 4, 6, 8, 11, 11, 6, 11, 5],
    [6, 5, 5, 5, 5, 5, 0, 5, 0],
    [7, 0, 13, 13, 13, 13, 2, 13, 1],
    [7, 1, 11, 13, 13, 13, 2, 13, 1],
    [7, 2, 10, 13, 13, 13, 2, 13, 1],
    [7, 3, 9, 13, 13, 13, 2, 13, 1],
    [7, 4, 8, 12, 13, 13, 4, 13, 3],
    [7, 5, 7, 9, 13, 13, 6, 13, 5],
    [7, 6, 6, 6, 6, 6, 0, 6, 0],
    [8, 0, 15, 15, 15, 15, 2, 15, 1],
    [8, 1, 13, 15, 15, 15, 2, 15, 1],
    [8, 2, 12, 15, 15, 15, 2, 15, 1],
    [8, 3, 11, 15, 15, 15, 2, 15, 1],
    [8, 4, 10, 15, 15, 15, 2, 15, 1],
    [8, 5, 9, 13, 15, 15, 4, 15, 3],
    [8, 6, 8, 10, 15, 15, 8, 15, 7],
    [8, 7, 7, 7, 7, 7, 0, 7, 0],
    [9, 0, 17, 17, 17, 17, 2, 17, 1],
    [9, 1, 15, 17, 17, 17, 2, 17, 1],
    [9, 2, 14, 17, 17, 17, 2, 17, 1],
    [9, 3, 13, 17, 17, 17, 2, 17, 1],
    [9, 4, 12, 17, 17, 17, 2, 17, 1],
    [9, 5, 11, 17, 17, 17, 2, 17, 1],
    [9, 6, 10, 14, 17, 17, 4, 17, 3],
    [9, 7, 9, 11, 17, 17, 8, 17, 7],
    [9, 8, 8, 8, 8, 8, 0, 8, 0],
];

// (r, s, d numerator, d denominator, omega_crit, q_max, alpha); r = 1 has no interior critical point
pub const APPENDIX_A: [(u32, u32, u64, u64, f64, f64, f64); 45] = [
    (1, 0, 1, 1, f64::NAN, f64::NAN, 0.0001),
    (2, 0, 1, 3, 0.380873415, 0.092362764, 0.0924),
    (2, 1, 2, 3, 0.619126585, 0.092362764, 0.0924),
    (3, 0, 1, 10, 0.156515839, 0.574903653, 0.5750),
    (3, 1, 6, 10, 0.570057856, 0.033129692, 0.0332),
    (3, 2, 3, 10, 0.354983613, 0.133395837, 0.1334),
    (4, 0, 1, 35, 0.050334141, 0.954367890, 0.9544),
    (4, 1, 12, 35, 0.388078022, 0.082052483, 0.0821),
    (4, 2, 18, 35, 0.509902230, 0.000674949, 0.0007),
    (4, 3, 4, 35, 0.174716514, 0.527277883, 0.5273),
    (5, 0, 1, 126, 0.014533733, 1.289877215, 1.2899),
    (5, 1, 10, 63, 0.226106436, 0.401303129, 0.4014),
    (5, 2, 10, 21, 0.483489850, 0.001874973, 0.0019),
    (5, 3, 20, 63, 0.368684520, 0.110936397, 0.1110),
    (5, 4, 5, 126, 0.068631349, 0.862927630, 0.8630),
    (6, 0, 1, 462, 0.004036768, 1.617654227, 1.6177),
    (6, 1, 5, 77, 0.107726908, 0.716954249, 0.7170),
    (6, 2, 25, 77, 0.374254393, 0.102277562, 0.1023),
    (6, 3, 100, 231, 0.453273191, 0.014901369, 0.0150),
    (6, 4, 25, 154, 0.229973747, 0.392223085, 0.3923),
    (6, 5, 1, 77, 0.023524596, 1.163386235, 1.1634),
    (7, 0, 1, 1716, 0.001099119, 1.945668808, 1.9457),
    (7, 1, 7, 286, 0.043419023, 0.996333645, 0.9964),
    (7, 2, 105, 572, 0.251943992, 0.341617878, 0.3417),
    (7, 3, 175, 429, 0.435602337, 0.028078584, 0.0281),
    (7, 4, 175, 572, 0.359684813, 0.125509465, 0.1256),
    (7, 5, 21, 286, 0.120110409, 0.678155990, 0.6782),
    (7, 6, 7, 1716, 0.007550349, 1.458456912, 1.4585),
    (8, 0, 1, 6435, 0.000295439, 2.275453190, 2.2755),
    (8, 1, 56, 6435, 0.015907656, 1.266360740, 1.2664),
    (8, 2, 196, 2145, 0.145076866, 0.605994603, 0.6060),
    (8, 3, 392, 1287, 0.358612853, 0.127291552, 0.1273),
    (8, 4, 490, 1287, 0.416050440, 0.047165647, 0.0472),
    (8, 5, 392, 2145, 0.251123145, 0.343478122, 0.3435),
    (8, 6, 196, 6435, 0.053489044, 0.936837253, 0.9369),
    (8, 7, 8, 6435, 0.002330913, 1.756424091, 1.7565),
    (9, 0, 1, 24310, 0.000078677, 2.607051525, 2.6071),
    (9, 1, 36, 12155, 0.005504277, 2.607051528, 2.6071),
    (9, 2, 504, 12155, 0.071503078, 0.850403988, 0.8505),
    (9, 3, 2352, 12155, 0.261799125, 0.319476358, 0.3195),
    (9, 4, 882, 2431, 0.402941270, 0.062457658, 0.0625),
    (9, 5, 3528, 12155, 0.347184466, 0.146872875, 0.1469),
    (9, 6, 1176, 12155, 0.152246813, 0.586388730, 0.5864),
    (9, 7, 144, 12155, 0.021508966, 1.187147894, 1.1872),
    (9, 8, 9, 24310, 0.000700372, 2.058883535, 2.0589),
];
