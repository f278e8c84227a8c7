//! Symplectic space W(2n-1, 2): points, lines, line counts, and the fixed fixtures
//! (doily, two-spread, its non-contextual variant, the non-assignable example and
//! the transfer example).

use rayon::prelude::*;

use crate::assign::{ClassicalAssignment, PauliAssignment, SignVector};
use crate::hypergram::{hypergram_from_configuration, ConfigurationError, Hypergram, RawHypergram};
use crate::pauli::{product, sign_of_product, Pauli, PauliObservable, Sign};

/// Largest qubit count for which points fit the `u64` index arithmetic below.
pub const MAX_QUBITS: usize = 31;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineConfiguration {
    pub n: usize,
    pub points: Vec<PauliObservable>,
    /// Sorted point-index triples, in increasing order.
    pub lines: Vec<[usize; 3]>,
    pub signs: SignVector,
}

impl LineConfiguration {
    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn negative_count(&self) -> usize {
        self.signs.negative_count()
    }

    /// The hypergram read off the configuration, with anticommutations taken
    /// from the points. Quadratic in the number of points.
    pub fn to_hypergram(&self) -> Result<(Hypergram, PauliAssignment), ConfigurationError> {
        let contexts: Vec<Vec<usize>> = self.lines.iter().map(|l| l.to_vec()).collect();
        hypergram_from_configuration(&self.points, &contexts)
    }
}

/// The observable whose encoding, read as a big-endian `2n`-bit integer, is `code`.
fn observable_from_code(n: usize, code: u64) -> PauliObservable {
    let letters = (0..n)
        .map(|k| {
            let shift = 2 * (n - 1 - k);
            Pauli::decode(code >> (shift + 1) & 1 == 1, code >> shift & 1 == 1)
        })
        .collect();
    PauliObservable::new(letters).expect("n >= 1")
}

/// Symplectic form of two big-endian encodings: swap each bit pair of `v`, then
/// take the parity of the overlap with `u`.
fn symplectic(u: u64, v: u64) -> bool {
    const LOW: u64 = 0x5555_5555_5555_5555;
    let swapped = ((v & LOW) << 1) | ((v >> 1) & LOW);
    (u & swapped).count_ones() & 1 == 1
}

/// All `4^n − 1` non-identity words; point `i` has encoding `i + 1`.
pub fn wn_points(n: usize) -> Vec<PauliObservable> {
    assert!(
        (1..=MAX_QUBITS).contains(&n),
        "qubit count {n} outside 1..={MAX_QUBITS}"
    );
    (1..1u64 << (2 * n)).map(|c| observable_from_code(n, c)).collect()
}

/// Every line `{p, q, pq}` of W(2n-1, 2), with its sign.
///
/// For commuting points `p < q` the third point has encoding `ψ(p) + ψ(q)`; the
/// line is emitted only from its two smallest points, so each appears once.
pub fn wn_lines(n: usize) -> LineConfiguration {
    assert!(
        (2..=MAX_QUBITS).contains(&n),
        "qubit count {n} outside 2..={MAX_QUBITS}"
    );
    let points = wn_points(n);
    let count = points.len();
    let lines_from = |p: usize| -> Vec<([usize; 3], Sign)> {
        let cp = p as u64 + 1;
        let mut out = Vec::new();
        for q in p + 1..count {
            let cq = q as u64 + 1;
            if symplectic(cp, cq) {
                continue;
            }
            let r = (cp ^ cq) as usize - 1;
            if r > q {
                let prod = product([&points[p], &points[q], &points[r]]).expect("same width");
                let sign = sign_of_product(prod).expect("collinear points multiply to ±I");
                out.push(([p, q, r], sign));
            }
        }
        out
    };
    let per_point: Vec<Vec<([usize; 3], Sign)>> = if n >= 5 {
        (0..count).into_par_iter().map(lines_from).collect()
    } else {
        (0..count).map(lines_from).collect()
    };
    let (lines, signs): (Vec<[usize; 3]>, Vec<Sign>) = per_point.into_iter().flatten().unzip();
    LineConfiguration {
        n,
        points,
        lines,
        signs: SignVector::new(signs),
    }
}

/// Number of lines of W(2n-1, 2): `∏_{i=1}^{2} (2^{n-2+i} − 1)(2^{n-i+1} + 1) / (2^i − 1)`.
pub fn count_lines(n: u32) -> u128 {
    assert!(n >= 2, "lines need n >= 2");
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=2u32 {
        num *= ((1u128 << (n - 2 + i)) - 1) * ((1u128 << (n - i + 1)) + 1);
        den *= (1u128 << i) - 1;
    }
    num / den
}

fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of negative lines,
/// `(1/6) Σ_{c=0}^{n-2} Σ_{a,b odd} 3^{2n−a−b−2c} C(n,c) C(n−c,a) C(n−c−a,b)`.
pub fn count_negative_lines(n: u32) -> u128 {
    assert!(n >= 2, "lines need n >= 2");
    let mut total: u128 = 0;
    for c in 0..=n - 2 {
        for a in (1..=n - c).step_by(2) {
            for b in (1..=n - c - a).step_by(2) {
                total +=
                    3u128.pow(2 * n - a - b - 2 * c) * binomial(n, c) * binomial(n - c, a) * binomial(n - c - a, b);
            }
        }
    }
    total / 6
}

const DOILY_LINES: [[usize; 3]; 15] = [
    [1, 2, 3],
    [1, 8, 9],
    [1, 10, 11],
    [2, 4, 6],
    [2, 5, 7],
    [3, 12, 15],
    [3, 13, 14],
    [4, 8, 12],
    [4, 10, 14],
    [5, 8, 13],
    [5, 10, 15],
    [6, 9, 15],
    [6, 11, 13],
    [7, 9, 14],
    [7, 11, 12],
];

const TWO_SPREAD_LINES: [[usize; 3]; 10] = [
    [1, 2, 3],
    [1, 10, 11],
    [2, 4, 6],
    [3, 13, 14],
    [4, 8, 12],
    [5, 8, 13],
    [5, 10, 15],
    [6, 9, 15],
    [7, 9, 14],
    [11, 12, 7],
];

#[rustfmt::skip]
const TWO_SPREAD_ANTICOMMUTATIONS: [(usize, usize); 60] = [
    (1, 4), (1, 5), (1, 6), (1, 7), (1, 12), (1, 13), (1, 14), (1, 15),
    (2, 8), (2, 9), (2, 10), (2, 11), (2, 12), (2, 13), (2, 14), (2, 15),
    (3, 4), (3, 5), (3, 6), (3, 7), (3, 8), (3, 9), (3, 10), (3, 11),
    (4, 5), (4, 7), (4, 9), (4, 11), (4, 13), (4, 15),
    (5, 6), (5, 9), (5, 11), (5, 12), (5, 14),
    (6, 7), (6, 8), (6, 10), (6, 12), (6, 14),
    (7, 8), (7, 10), (7, 13), (7, 15),
    (8, 10), (8, 11), (8, 14), (8, 15),
    (9, 10), (9, 11), (9, 12), (9, 13),
    (10, 12), (10, 13),
    (11, 14), (11, 15),
    (12, 13), (12, 14),
    (13, 15),
    (14, 15),
];

#[rustfmt::skip]
const VARIANT_ANTICOMMUTATIONS: [(usize, usize); 45] = [
    (1, 5), (1, 7), (1, 8), (1, 9), (1, 12), (1, 15),
    (2, 5), (2, 8), (2, 10), (2, 11), (2, 12),
    (3, 7), (3, 9), (3, 10), (3, 11), (3, 15),
    (4, 5), (4, 7), (4, 10), (4, 11), (4, 13), (4, 14),
    (5, 11), (5, 12),
    (6, 7), (6, 8), (6, 12), (6, 13), (6, 14),
    (7, 8), (7, 10), (7, 13), (7, 15),
    (8, 9), (8, 11),
    (9, 11), (9, 12), (9, 13),
    (10, 12), (10, 14),
    (11, 14), (11, 15),
    (12, 13), (12, 14),
    (14, 15),
];

/// 2-qubit labels of the fifteen doily points, vertex 1 first.
const TWO_QUBIT_LABELS: [&str; 15] = [
    "IX", "XI", "XX", "IZ", "IY", "XZ", "XY", "ZI", "ZX", "YI", "YX", "ZZ", "ZY", "YZ", "YY",
];

const VARIANT_LABELS: [&str; 15] = [
    "IIX", "IXX", "IXI", "XIX", "IIZ", "XXI", "IZZ", "ZXZ", "ZZZ", "YYI", "YYX", "YXY", "ZXI", "ZII", "YYZ",
];

const DOILY_LABELS_3Q: [&str; 15] = [
    "XYI", "YZZ", "ZXZ", "YYY", "IXY", "IXX", "YYX", "ZXY", "YZY", "YZX", "ZXX", "XZI", "ZII", "IXZ", "YYZ",
];

const DOILY_LABELS_4Q: [&str; 15] = [
    "XXIX", "XIZI", "IXZX", "ZIXI", "XZII", "YIYI", "IZZI", "IIXI", "XXXX", "YYZX", "ZZZI", "ZIII", "XZXI", "XYYX",
    "ZXZX",
];

const TRANSFER_A1: [i8; 15] = [1, -1, -1, -1, 1, -1, -1, 1, -1, 1, -1, -1, 1, -1, 1];

fn to_vec<const K: usize>(edges: &[[usize; K]]) -> Vec<Vec<usize>> {
    edges.iter().map(|e| e.to_vec()).collect()
}

fn labels(words: &[&str]) -> PauliAssignment {
    let obs = words.iter().map(|w| w.parse().expect("fixture label")).collect();
    PauliAssignment::new(obs).expect("fixture labels share a width")
}

fn build(raw: RawHypergram) -> Hypergram {
    raw.into_hypergram().expect("fixture is a hypergram")
}

/// The doily: fifteen lines of W(3, 2) with every non-collinear pair anticommuting,
/// and its 2-qubit labeling.
pub fn doily() -> (Hypergram, PauliAssignment) {
    let hyperedges = to_vec(&DOILY_LINES);
    let pairs = crate::hypergram::complement_graph(15, &to_vec(&DOILY_LINES.map(|l| l.map(|v| v - 1))))
        .into_iter()
        .map(|(a, b)| (a + 1, b + 1))
        .collect();
    (
        build(RawHypergram::new(15, hyperedges, pairs)),
        labels(&TWO_QUBIT_LABELS),
    )
}

/// The doily minus a spread (ten lines), with its 2-qubit labeling.
pub fn two_spread() -> (Hypergram, PauliAssignment) {
    let raw = RawHypergram::new(15, to_vec(&TWO_SPREAD_LINES), TWO_SPREAD_ANTICOMMUTATIONS.to_vec());
    (build(raw), labels(&TWO_QUBIT_LABELS))
}

/// Same hyperedges as [`two_spread`], a 45-pair anticommutation graph, and a
/// 3-qubit labeling. Not contextual.
pub fn two_spread_variant() -> (Hypergram, PauliAssignment) {
    let raw = RawHypergram::new(15, to_vec(&TWO_SPREAD_LINES), VARIANT_ANTICOMMUTATIONS.to_vec());
    (build(raw), labels(&VARIANT_LABELS))
}

/// Two triangles sharing vertex 1, with the single anticommutation {3, 5}.
/// Returned raw: its anticommutation graph has isolated vertices.
pub fn nonassignable_example() -> RawHypergram {
    RawHypergram::new(5, vec![vec![1, 2, 3], vec![1, 4, 5]], vec![(3, 5)])
}

/// 3-qubit and 4-qubit labelings of the doily and a classical assignment for
/// the 3-qubit one, as used in the transfer example.
pub fn transfer_fixtures() -> (PauliAssignment, PauliAssignment, ClassicalAssignment) {
    let a1 = ClassicalAssignment::new(TRANSFER_A1.iter().map(|&v| Sign::from_i8(v).expect("±1")).collect());
    (labels(&DOILY_LABELS_3Q), labels(&DOILY_LABELS_4Q), a1)
}
