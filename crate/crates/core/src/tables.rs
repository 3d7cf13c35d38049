//! Reference data for dimensions 5 through 45.

/// A canonical order-3 unitary `[F_d, χ_d]` together with the dimensions of
/// its eigenspaces, listed in non-decreasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderThreeEntry {
    pub d: i64,
    pub f: [i64; 4],
    pub chi: [i64; 2],
    pub eigenspace_dims: [usize; 3],
}

/// A conjugator `[L_d, η_d]` sending the element of [`ORDER_THREE`] to
/// `[Z, 0]`, `Z = [[0, −1], [1, −1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugatorEntry {
    pub d: i64,
    pub l: [i64; 4],
    pub eta: [i64; 2],
}

const fn o3(d: i64, f: [i64; 4], chi: [i64; 2], eigenspace_dims: [usize; 3]) -> OrderThreeEntry {
    OrderThreeEntry {
        d,
        f,
        chi,
        eigenspace_dims,
    }
}

const fn cj(d: i64, l: [i64; 4], eta: [i64; 2]) -> ConjugatorEntry {
    ConjugatorEntry { d, l, eta }
}

pub const ORDER_THREE: [OrderThreeEntry; 41] = [
    o3(5, [-1, -1, 1, 0], [2, 2], [1, 2, 2]),
    o3(6, [-2, 3, -1, 1], [3, 0], [1, 2, 3]),
    o3(7, [-2, -2, -2, 1], [2, 0], [2, 2, 3]),
    o3(8, [-4, 3, 1, 3], [3, -1], [2, 3, 3]),
    o3(9, [-3, 2, 1, 2], [2, 1], [2, 3, 4]),
    o3(10, [-4, -7, -1, 3], [-2, 0], [3, 3, 4]),
    o3(11, [-5, 4, 3, 4], [-5, 0], [3, 4, 4]),
    o3(12, [-4, 11, 1, 3], [4, -5], [3, 4, 5]),
    o3(13, [-2, -2, -5, 1], [6, 0], [4, 4, 5]),
    o3(14, [-2, -3, 1, 1], [-5, 1], [4, 5, 5]),
    o3(15, [-5, 1, -6, 4], [-7, -6], [4, 5, 6]),
    o3(16, [-8, 13, 3, 7], [1, 0], [5, 5, 6]),
    o3(17, [-5, -7, 3, 4], [6, 7], [5, 6, 6]),
    o3(18, [-5, 5, 3, 4], [9, 0], [5, 6, 7]),
    o3(19, [-2, 4, 4, 1], [-7, -4], [6, 6, 7]),
    o3(20, [-2, -3, 1, 1], [-9, -6], [6, 7, 7]),
    o3(21, [-5, -6, -7, 4], [-6, 1], [6, 7, 8]),
    o3(22, [-2, -1, 3, 1], [8, 2], [7, 7, 8]),
    o3(23, [-11, -10, -5, 10], [0, -3], [7, 8, 8]),
    o3(24, [-2, -3, 1, 1], [0, -3], [7, 8, 9]),
    o3(25, [-6, -1, 6, 5], [-7, 12], [8, 8, 9]),
    o3(26, [-7, -9, -1, 6], [-11, 11], [8, 9, 9]),
    o3(27, [-10, 1, -10, 9], [-3, -12], [8, 9, 10]),
    o3(28, [-3, 21, 5, 2], [-10, -6], [9, 9, 10]),
    o3(29, [-13, -6, 2, 12], [-10, 12], [9, 10, 10]),
    o3(30, [-8, -7, -9, 7], [11, -3], [9, 10, 11]),
    o3(31, [-9, -10, -2, 8], [-14, 6], [10, 10, 11]),
    o3(32, [-11, -31, -15, 10], [11, -7], [10, 11, 11]),
    o3(33, [-7, -5, 2, 6], [8, -5], [10, 11, 12]),
    o3(34, [-12, 3, 1, 11], [-1, -16], [11, 11, 12]),
    o3(35, [-13, -12, 16, 12], [11, -12], [11, 12, 12]),
    o3(36, [-8, 21, -13, 7], [0, 7], [11, 12, 13]),
    o3(37, [-16, 1, 18, 15], [-4, 3], [12, 12, 13]),
    o3(38, [-6, -31, 1, 5], [12, -10], [12, 13, 13]),
    o3(39, [-17, -11, 0, 16], [8, 15], [12, 13, 14]),
    o3(40, [-3, 19, -13, 2], [-12, -19], [13, 13, 14]),
    o3(41, [-2, -10, -12, 1], [19, 13], [13, 14, 14]),
    o3(42, [-15, 11, 19, 14], [0, -15], [13, 14, 15]),
    o3(43, [-11, 1, 18, 10], [-1, 21], [14, 14, 15]),
    o3(44, [-8, -29, 5, 7], [16, -5], [14, 15, 15]),
    o3(45, [-20, -1, 21, 19], [-8, 6], [14, 15, 16]),
];

pub const CONJUGATORS: [ConjugatorEntry; 41] = [
    cj(5, [1, 0, 1, 1], [0, -2]),
    cj(6, [0, 1, 1, -1], [1, -1]),
    cj(7, [2, 0, -3, -3], [0, 3]),
    cj(8, [0, 1, -1, -3], [-2, 3]),
    cj(9, [2, 0, -3, -4], [0, -4]),
    cj(10, [3, 1, -7, -2], [2, 4]),
    cj(11, [1, 1, 2, 3], [0, 5]),
    cj(12, [0, 1, -1, -3], [3, 2]),
    cj(13, [4, 2, 5, 6], [-6, -5]),
    cj(14, [0, 1, -1, -1], [-4, 3]),
    cj(15, [1, 0, 5, -1], [0, 7]),
    cj(16, [3, 1, -11, -14], [5, 8]),
    cj(17, [1, 1, 2, 3], [8, -4]),
    cj(18, [2, 1, 7, -14], [-3, 3]),
    cj(19, [2, 1, 0, -9], [5, -6]),
    cj(20, [0, 1, -1, -1], [9, -3]),
    cj(21, [2, 1, -4, 8], [-3, -7]),
    cj(22, [1, 0, 2, 1], [8, 6]),
    cj(23, [0, 3, -8, -7], [-10, -4]),
    cj(24, [0, 1, -1, -1], [3, 0]),
    cj(25, [1, 0, 6, 1], [3, 4]),
    cj(26, [9, 0, 11, -23], [2, -7]),
    cj(27, [1, 0, 10, -1], [-4, 7]),
    cj(28, [12, 1, -25, 26], [-6, -8]),
    cj(29, [11, 0, -2, 8], [-4, -2]),
    cj(30, [10, 1, 29, 3], [12, 1]),
    cj(31, [11, 0, 6, -14], [-5, 4]),
    cj(32, [27, 1, -8, -5], [13, -15]),
    cj(33, [6, 2, 5, -15], [13, 15]),
    cj(34, [0, 1, -1, -11], [13, 3]),
    cj(35, [14, 2, 10, 4], [4, 6]),
    cj(36, [17, 1, 5, -4], [-2, -5]),
    cj(37, [6, 0, -15, -6], [-7, -6]),
    cj(38, [0, 1, -1, -5], [-6, 16]),
    cj(39, [7, 2, 2, 6], [17, 14]),
    cj(40, [27, 1, 14, -35], [-19, 2]),
    cj(41, [18, 0, -5, 16], [1, -15]),
    cj(42, [2, 1, 11, -36], [8, 7]),
    cj(43, [8, 1, -16, -18], [14, 16]),
    cj(44, [7, 1, -37, 20], [6, 19]),
    cj(45, [1, 0, 20, 1], [14, -6]),
];

pub fn order_three(d: i64) -> Option<&'static OrderThreeEntry> {
    ORDER_THREE.iter().find(|e| e.d == d)
}

pub fn conjugator(d: i64) -> Option<&'static ConjugatorEntry> {
    CONJUGATORS.iter().find(|e| e.d == d)
}
