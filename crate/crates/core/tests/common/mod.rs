//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here goes through the bit-packed code paths of the library: Pauli
//! algebra is checked with explicit Gaussian-integer matrices and the degree by
//! direct enumeration of ±1 assignments.
#![allow(dead_code)]

use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::Rng;

use hypergram::hypergram::{hypergram_from_configuration, Hypergram, RawHypergram};
use hypergram::{Pauli, PauliAssignment, PauliObservable, Sign, SignVector};

pub type C = Complex<i64>;

/// Dense square matrix with entries in Z[i]; Pauli products never leave it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub dim: usize,
    pub a: Vec<C>,
}

impl Mat {
    pub fn identity(dim: usize) -> Mat {
        let mut a = vec![C::new(0, 0); dim * dim];
        for i in 0..dim {
            a[i * dim + i] = C::new(1, 0);
        }
        Mat { dim, a }
    }

    fn at(&self, i: usize, j: usize) -> C {
        self.a[i * self.dim + j]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        let d = self.dim;
        let mut a = vec![C::new(0, 0); d * d];
        for i in 0..d {
            for k in 0..d {
                let x = self.at(i, k);
                if x == C::new(0, 0) {
                    continue;
                }
                for j in 0..d {
                    a[i * d + j] += x * o.at(k, j);
                }
            }
        }
        Mat { dim: d, a }
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let d = self.dim * o.dim;
        let mut a = vec![C::new(0, 0); d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..o.dim {
                    for l in 0..o.dim {
                        a[(i * o.dim + k) * d + j * o.dim + l] = self.at(i, j) * o.at(k, l);
                    }
                }
            }
        }
        Mat { dim: d, a }
    }

    pub fn scale(&self, s: C) -> Mat {
        Mat {
            dim: self.dim,
            a: self.a.iter().map(|x| x * s).collect(),
        }
    }

    /// `s` with `self = s · other`, if any `s ∈ {1, i, −1, −i}` works.
    pub fn phase_relative_to(&self, other: &Mat) -> Option<u8> {
        (0..4u8).find(|&k| other.scale(i_pow(k)) == *self)
    }
}

pub fn i_pow(k: u8) -> C {
    [C::new(1, 0), C::new(0, 1), C::new(-1, 0), C::new(0, -1)][(k % 4) as usize]
}

pub fn letter_matrix(p: Pauli) -> Mat {
    let (o, l, i) = (C::new(0, 0), C::new(1, 0), C::new(0, 1));
    let a = match p {
        Pauli::I => vec![l, o, o, l],
        Pauli::X => vec![o, l, l, o],
        Pauli::Y => vec![o, -i, i, o],
        Pauli::Z => vec![l, o, o, -l],
    };
    Mat { dim: 2, a }
}

pub fn matrix(o: &PauliObservable) -> Mat {
    o.letters()
        .iter()
        .fold(Mat::identity(1), |acc, &p| acc.kron(&letter_matrix(p)))
}

pub fn random_observable(rng: &mut impl Rng, n: usize) -> PauliObservable {
    let letters = (0..n)
        .map(|_| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..4)])
        .collect();
    PauliObservable::new(letters).unwrap()
}

pub fn all_observables(n: usize) -> Vec<PauliObservable> {
    (0..4usize.pow(n as u32))
        .map(|mut c| {
            let letters = (0..n)
                .map(|_| {
                    let p = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][c % 4];
                    c /= 4;
                    p
                })
                .collect();
            PauliObservable::new(letters).unwrap()
        })
        .collect()
}

/// Phase-free product `p · q` computed letter by letter from matrices.
pub fn phase_free_product(p: &PauliObservable, q: &PauliObservable) -> (PauliObservable, u8) {
    let m = matrix(p).mul(&matrix(q));
    for cand in all_observables(p.qubits()) {
        if let Some(k) = m.phase_relative_to(&matrix(&cand)) {
            return (cand, k);
        }
    }
    unreachable!("Pauli group is closed")
}

/// Number of hyperedges whose classical sign under `values` differs from `signs`,
/// minimized over all `2^|V|` assignments by plain enumeration.
pub fn naive_degree(vertices: usize, hyperedges: &[Vec<usize>], signs: &[Sign]) -> usize {
    (0u32..1 << vertices)
        .map(|x| {
            hyperedges
                .iter()
                .zip(signs)
                .filter(|(edge, &s)| {
                    let negatives = edge.iter().filter(|&&v| x >> v & 1 == 1).count();
                    let classical = if negatives % 2 == 1 { Sign::Minus } else { Sign::Plus };
                    classical != s
                })
                .count()
        })
        .min()
        .unwrap()
}

/// Random valid hypergram on at most `max_vertices` vertices with random
/// hyperedges of size 2..=4 and a random anticommutation graph inside the
/// complement; retried until it validates.
pub fn random_hypergram(rng: &mut impl Rng, max_vertices: usize) -> Hypergram {
    loop {
        let v = rng.gen_range(3..=max_vertices);
        let edge_count = rng.gen_range(1..=2 * v);
        let mut edges: Vec<Vec<usize>> = Vec::new();
        for _ in 0..edge_count {
            let size = rng.gen_range(2..=4.min(v));
            let mut members: Vec<usize> = (1..=v).collect::<Vec<_>>();
            members.shuffle(rng);
            members.truncate(size);
            members.sort();
            if !edges.contains(&members) {
                edges.push(members);
            }
        }
        // cover every vertex
        let mut covered = vec![false; v + 1];
        for e in &edges {
            for &x in e {
                covered[x] = true;
            }
        }
        for (x, &c) in covered.iter().enumerate().skip(1) {
            if !c {
                let other = if x == 1 { 2 } else { 1 };
                let e = vec![other.min(x), other.max(x)];
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        let mut pairs = Vec::new();
        for a in 1..=v {
            for b in a + 1..=v {
                let together = edges.iter().any(|e| e.contains(&a) && e.contains(&b));
                if !together && rng.gen_bool(0.6) {
                    pairs.push((a, b));
                }
            }
        }
        if let Ok(hg) = RawHypergram::new(v, edges, pairs).into_hypergram() {
            return hg;
        }
    }
}

pub fn random_signs(rng: &mut impl Rng, len: usize) -> SignVector {
    SignVector::new(
        (0..len)
            .map(|_| if rng.gen() { Sign::Minus } else { Sign::Plus })
            .collect(),
    )
}

/// Random quantum configuration on `n` qubits: lines `{p, q, pq}` and, now and
/// then, 4-element contexts `{p, q, r, pqr}`, read back as a hypergram.
/// Assignable by construction; retried until the read-back validates.
pub fn random_assignable(rng: &mut impl Rng, n: usize, contexts: usize) -> (Hypergram, PauliAssignment) {
    'retry: loop {
        let mut observables: Vec<PauliObservable> = Vec::new();
        let index_of = |o: PauliObservable, obs: &mut Vec<PauliObservable>| -> usize {
            match obs.iter().position(|x| *x == o) {
                Some(i) => i,
                None => {
                    obs.push(o);
                    obs.len() - 1
                }
            }
        };
        let mut ctxs: Vec<Vec<usize>> = Vec::new();
        let mut attempts = 0;
        while ctxs.len() < contexts {
            attempts += 1;
            if attempts > 50 * contexts {
                continue 'retry;
            }
            let size = if rng.gen_bool(0.25) { 4 } else { 3 };
            let mut members: Vec<PauliObservable> = Vec::new();
            while members.len() < size - 1 {
                let o = random_observable(rng, n);
                if o.is_identity() || members.contains(&o) || !members.iter().all(|m| m.commutes(&o).unwrap()) {
                    break;
                }
                members.push(o);
            }
            if members.len() < size - 1 {
                continue;
            }
            let last = phase_free_product_all(&members);
            if last.is_identity() || members.contains(&last) {
                continue;
            }
            members.push(last);
            let mut idx: Vec<usize> = members.into_iter().map(|o| index_of(o, &mut observables)).collect();
            idx.sort();
            if ctxs.contains(&idx) {
                continue;
            }
            ctxs.push(idx);
        }
        if let Ok(pair) = hypergram_from_configuration(&observables, &ctxs) {
            return pair;
        }
    }
}

fn phase_free_product_all(os: &[PauliObservable]) -> PauliObservable {
    let mut acc = os[0].clone();
    for o in &os[1..] {
        acc = phase_free_product(&acc, o).0;
    }
    acc
}

/// Symplectic transvection by `t`: labels anticommuting with `t` get multiplied
/// by it (phase dropped). Preserves commutation and products up to sign.
pub fn transvect(alpha: &PauliAssignment, t: &PauliObservable) -> PauliAssignment {
    let labels = alpha
        .labels()
        .iter()
        .map(|p| {
            if p.commutes(t).unwrap() {
                p.clone()
            } else {
                PauliObservable::decode(&p.encode().try_xor(&t.encode()).unwrap()).unwrap()
            }
        })
        .collect();
    PauliAssignment::new(labels).unwrap()
}

/// `α(v) ⊗ I^{⊗extra}`.
pub fn pad(alpha: &PauliAssignment, extra: usize) -> PauliAssignment {
    let id = PauliObservable::identity(extra).unwrap();
    PauliAssignment::new(alpha.labels().iter().map(|p| p.tensor(&id)).collect()).unwrap()
}
