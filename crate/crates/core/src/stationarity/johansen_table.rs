//! Asymptotic tables for the Johansen test with an unrestricted intercept and
//! no trend in the cointegrating relations, indexed by the number of common
//! stochastic trends `m = K - r` (entry `m - 1`).

/// 5% critical values of the trace statistic.
pub(crate) const TRACE_CV_5PCT: [f64; 12] = [
    3.841466, 15.49471, 29.79707, 47.85613, 69.81889, 95.75366, 125.6154, 159.5297, 197.3709,
    239.2354, 285.1425, 334.9837,
];

/// 5% critical values of the maximum-eigenvalue statistic.
pub(crate) const MAX_EIGEN_CV_5PCT: [f64; 12] = [
    3.841466, 14.26460, 21.13162, 27.58434, 33.87687, 40.07757, 46.23142, 52.36261, 58.43354,
    64.50472, 70.53513, 76.57843,
];

/// `(m, trace mean, trace variance, max-eigen mean, max-eigen variance)` of the
/// limiting distributions, simulated by `scripts/johansen_moments.py`
/// (200,000 replications of 500-step random walks). For `m = 1` both
/// statistics are exactly chi-square(1).
pub(crate) const GAMMA_MOMENTS: [(usize, f64, f64, f64, f64); 12] = [
    (1, 1.0, 2.0, 1.0, 2.0),
    (2, 8.2531, 14.3241, 7.4721, 12.4697),
    (3, 19.3562, 31.5782, 12.9696, 18.6724),
    (4, 34.2623, 53.9003, 18.3137, 23.9665),
    (5, 53.0191, 82.3665, 23.6590, 29.1568),
    (6, 75.6175, 116.4064, 29.0308, 33.7008),
    (7, 102.0393, 155.4743, 34.3998, 38.3363),
    (8, 132.2307, 201.0486, 39.7523, 42.2594),
    (9, 166.2394, 251.0628, 45.0977, 46.3499),
    (10, 204.0176, 307.7492, 50.4519, 50.1685),
    (11, 245.5291, 368.5207, 55.8256, 54.0788),
    (12, 290.8829, 437.0988, 61.2030, 57.3721),
];
