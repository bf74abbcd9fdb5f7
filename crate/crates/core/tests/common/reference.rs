//! Published values for the IEEE test systems, used as comparison targets.

#![allow(dead_code)]

/// Directed 30-bus weights `(from, to, r, x)` as printed, in print order.
pub const WEIGHTS_30: [(u32, u32, f64, f64); 41] = [
    (1, 2, 0.0192, 0.0575),
    (1, 3, 0.0452, 0.1852),
    (2, 4, 0.0570, 0.1737),
    (2, 5, 0.0472, 0.1983),
    (2, 6, 0.0581, 0.1763),
    (3, 4, 0.0132, 0.0379),
    (4, 6, 0.0119, 0.0414),
    (4, 12, 0.0000, 0.2560),
    (6, 7, 0.0267, 0.0820),
    (6, 8, 0.0120, 0.0420),
    (6, 9, 0.0000, 0.2080),
    (6, 10, 0.0000, 0.5560),
    (6, 28, 0.0169, 0.0599),
    (7, 5, 0.0460, 0.1160),
    (9, 11, 0.0000, 0.2080),
    (9, 10, 0.0000, 0.1100),
    (10, 20, 0.0936, 0.2090),
    (10, 17, 0.0324, 0.0845),
    (10, 21, 0.0348, 0.0749),
    (10, 22, 0.0727, 0.1499),
    (12, 14, 0.1231, 0.2559),
    (12, 15, 0.0662, 0.1304),
    (12, 16, 0.0945, 0.1987),
    (13, 12, 0.0000, 0.1400),
    (14, 15, 0.2210, 0.1997),
    (15, 18, 0.1073, 0.2185),
    (15, 23, 0.1000, 0.2020),
    (16, 17, 0.0824, 0.1923),
    (18, 19, 0.0639, 0.1292),
    (20, 19, 0.0340, 0.0680),
    (22, 21, 0.0116, 0.0236),
    (22, 24, 0.1150, 0.1790),
    (23, 24, 0.1320, 0.2700),
    (25, 24, 0.1885, 0.3292),
    (25, 26, 0.2544, 0.3800),
    (27, 25, 0.1093, 0.2087),
    (27, 29, 0.2198, 0.4153),
    (27, 30, 0.3202, 0.6027),
    (28, 27, 0.0000, 0.3960),
    (27, 8, 0.0636, 0.2000),
    (29, 30, 0.2399, 0.4533),
];

/// Printed weight entries known to differ from the archived case data.
/// `(printed from, printed to, archive from, archive to, archive r, archive x)`.
pub const WEIGHT_ERRATA_30: [(u32, u32, u32, u32, f64, f64); 3] = [
    (1, 3, 1, 3, 0.0452, 0.1652),
    (16, 17, 16, 17, 0.0524, 0.1923),
    (27, 8, 28, 8, 0.0636, 0.2000),
];

/// Undirected degree of buses 1..=30.
pub const DEGREE_30: [usize; 30] = [
    2, 4, 2, 4, 2, 7, 2, 2, 3, 6, 1, 5, 1, 2, 4, 2, 2, 2, 2, 2, 2, 3, 2, 3, 3, 1, 4, 3, 2, 2,
];

/// `(in, out)` degree of buses 1..=30.
pub const IN_OUT_30: [(usize, usize); 30] = [
    (0, 2),
    (1, 3),
    (1, 1),
    (2, 2),
    (2, 0),
    (2, 5),
    (1, 1),
    (2, 0),
    (1, 2),
    (2, 4),
    (1, 0),
    (2, 3),
    (0, 1),
    (1, 1),
    (2, 2),
    (1, 1),
    (2, 0),
    (1, 1),
    (2, 0),
    (1, 1),
    (2, 0),
    (1, 2),
    (1, 1),
    (3, 0),
    (1, 2),
    (1, 0),
    (1, 3),
    (1, 2),
    (1, 1),
    (2, 0),
];

pub struct Summary {
    pub buses: usize,
    pub nodes: usize,
    pub edges: usize,
    pub average_degree: f64,
    pub clustering: f64,
    pub char_path_length: f64,
    pub diameter: usize,
    pub diameter_pairs: usize,
}

pub const SUMMARIES: [Summary; 4] = [
    Summary {
        buses: 30,
        nodes: 30,
        edges: 41,
        average_degree: 2.73,
        clustering: 0.2348,
        char_path_length: 3.43,
        diameter: 7,
        diameter_pairs: 3,
    },
    Summary {
        buses: 57,
        nodes: 57,
        edges: 80,
        average_degree: 2.81,
        clustering: 0.1211,
        char_path_length: 5.12,
        diameter: 13,
        diameter_pairs: 4,
    },
    Summary {
        buses: 118,
        nodes: 118,
        edges: 186,
        average_degree: 3.15,
        clustering: 0.1592,
        char_path_length: 2.95,
        diameter: 9,
        diameter_pairs: 3,
    },
    Summary {
        buses: 300,
        nodes: 300,
        edges: 411,
        average_degree: 2.74,
        clustering: 0.0851,
        char_path_length: 5.95,
        diameter: 17,
        diameter_pairs: 1,
    },
];

/// Ranked line, normalized betweenness, unstable flag.
pub type Row = (u32, u32, f64, bool);

pub const PROPOSED_30: [Row; 29] = [
    (1, 2, 1.0000, true),
    (1, 3, 1.0000, true),
    (2, 4, 1.0000, true),
    (2, 5, 1.0000, true),
    (2, 6, 1.0000, true),
    (6, 7, 0.9621, false),
    (6, 8, 0.9621, false),
    (6, 9, 0.9621, false),
    (6, 28, 0.9621, false),
    (9, 10, 0.4810, false),
    (9, 11, 0.4810, false),
    (3, 4, 0.4000, false),
    (10, 17, 0.3741, false),
    (10, 20, 0.3741, false),
    (10, 21, 0.3741, false),
    (10, 22, 0.3741, false),
    (4, 12, 0.3500, false),
    (12, 14, 0.3207, false),
    (12, 15, 0.3207, false),
    (12, 16, 0.3207, false),
    (28, 27, 0.3207, false),
    (27, 25, 0.2672, false),
    (27, 29, 0.2672, false),
    (27, 30, 0.2672, false),
    (15, 18, 0.1603, false),
    (15, 23, 0.1603, false),
    (20, 19, 0.1069, false),
    (22, 24, 0.1069, false),
    (25, 26, 0.1069, false),
];

pub const PAST_30: [Row; 29] = [
    (1, 2, 1.0000, true),
    (2, 4, 1.0000, true),
    (2, 5, 1.0000, true),
    (2, 6, 1.0000, true),
    (6, 7, 1.0000, false),
    (6, 8, 1.0000, false),
    (6, 9, 1.0000, false),
    (6, 28, 1.0000, false),
    (1, 3, 0.9635, true),
    (9, 10, 0.5000, false),
    (9, 11, 0.5000, false),
    (10, 17, 0.3889, false),
    (10, 20, 0.3889, false),
    (10, 21, 0.3889, false),
    (10, 22, 0.3889, false),
    (3, 4, 0.3854, false),
    (4, 12, 0.3372, false),
    (12, 14, 0.3333, false),
    (12, 15, 0.3333, false),
    (12, 16, 0.3333, false),
    (28, 27, 0.3333, false),
    (27, 25, 0.2778, false),
    (27, 29, 0.2778, false),
    (27, 30, 0.2778, false),
    (15, 18, 0.1667, false),
    (15, 23, 0.1667, false),
    (20, 19, 0.1111, false),
    (22, 24, 0.1111, false),
    (25, 26, 0.1111, false),
];

pub const SHIFT_TO_3: [Row; 10] = [
    (3, 1, 1.0000, true),
    (3, 4, 1.0000, true),
    (4, 2, 1.0000, true),
    (4, 6, 1.0000, true),
    (4, 12, 1.0000, true),
    (2, 6, 0.6786, false),
    (6, 7, 0.6786, false),
    (6, 8, 0.6786, false),
    (6, 9, 0.6786, false),
    (6, 28, 0.6786, false),
];

pub const SHIFT_TO_23: [Row; 10] = [
    (23, 15, 1.0000, true),
    (23, 24, 1.0000, true),
    (15, 12, 1.0000, true),
    (15, 14, 1.0000, true),
    (15, 18, 1.0000, true),
    (12, 4, 0.7059, false),
    (12, 13, 0.7059, false),
    (12, 16, 0.7059, false),
    (24, 22, 0.7059, false),
    (24, 25, 0.7059, false),
];

/// Top critical lines `(from, to, normalized)` per system.
pub const TOP_57: [(u32, u32, f64); 15] = [
    (1, 2, 1.0000),
    (1, 15, 1.0000),
    (1, 16, 1.0000),
    (1, 17, 1.0000),
    (2, 15, 1.0000),
    (15, 13, 1.0000),
    (15, 14, 1.0000),
    (15, 45, 1.0000),
    (14, 46, 0.5820),
    (46, 47, 0.5542),
    (47, 48, 0.5265),
    (48, 38, 0.4988),
    (38, 22, 0.4711),
    (38, 37, 0.4711),
    (9, 13, 0.3325),
];

pub const TOP_118: [(u32, u32, f64); 15] = [
    (9, 8, 1.0000),
    (10, 9, 1.0000),
    (8, 5, 0.9697),
    (8, 30, 0.9697),
    (89, 85, 0.8175),
    (89, 88, 0.8175),
    (89, 90, 0.8175),
    (89, 92, 0.8175),
    (92, 91, 0.8175),
    (92, 93, 0.8175),
    (92, 94, 0.8175),
    (92, 102, 0.8175),
    (49, 42, 0.7676),
    (49, 45, 0.7676),
    (49, 47, 0.7676),
];

pub const TOP_300: [(u32, u32, f64); 15] = [
    (2, 3, 1.0000),
    (3, 1, 1.0000),
    (3, 4, 1.0000),
    (3, 7, 1.0000),
    (3, 129, 1.0000),
    (249, 3, 1.0000),
    (4, 16, 0.9877),
    (16, 15, 0.9768),
    (16, 36, 0.9768),
    (33, 36, 0.9441),
    (36, 28, 0.9441),
    (36, 35, 0.9441),
    (36, 40, 0.9441),
    (15, 31, 0.6840),
    (31, 32, 0.6840),
];
