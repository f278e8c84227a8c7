//! Phase-free n-qubit Pauli observables and their symplectic encoding.
//!
//! An observable `G₁G₂⋯Gₙ` is encoded as a vector of `𝔽₂^{2n}` by concatenating
//! per-qubit pairs `I → 00`, `X → 01`, `Y → 11`, `Z → 10`. Two observables commute
//! iff the symplectic form of their encodings vanishes.
//!
//! Products keep track of the phase `i^k` using the single-qubit table
//! `XY = iZ`, `YZ = iX`, `ZX = iY` (and the reversed products with `-i`).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf2::BitVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("encoding has odd length {0}")]
    OddLength(usize),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },
    #[error("invalid Pauli letter {0:?}")]
    InvalidLetter(char),
    #[error("an observable needs at least one qubit")]
    NoQubits,
    #[error("product of an empty list of observables")]
    EmptyProduct,
    #[error("observables {0} and {1} of the context do not commute")]
    NonCommuting(usize, usize),
    #[error("context product {0} is not proportional to the identity")]
    NonIdentityProduct(String),
    #[error("context product has an imaginary phase")]
    ImaginaryPhase,
}

/// A single-qubit Pauli matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// The pair `ψ(self)`.
    #[inline]
    pub fn encode(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (false, true),
            Pauli::Y => (true, true),
            Pauli::Z => (true, false),
        }
    }

    #[inline]
    pub fn decode(first: bool, second: bool) -> Pauli {
        match (first, second) {
            (false, false) => Pauli::I,
            (false, true) => Pauli::X,
            (true, true) => Pauli::Y,
            (true, false) => Pauli::Z,
        }
    }

    /// `self · other = i^k · letter`, returned as `(letter, k)`.
    #[inline]
    pub fn mul_phase(self, other: Pauli) -> (Pauli, u8) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (p, 0),
            (X, X) | (Y, Y) | (Z, Z) => (I, 0),
            (X, Y) => (Z, 1),
            (Y, X) => (Z, 3),
            (Y, Z) => (X, 1),
            (Z, Y) => (X, 3),
            (Z, X) => (Y, 1),
            (X, Z) => (Y, 3),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Result<Pauli, PauliError> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(PauliError::InvalidLetter(other)),
        }
    }
}

/// `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    #[inline]
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A phase-free tensor word `G₁⋯Gₙ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliObservable {
    letters: Vec<Pauli>,
}

impl PauliObservable {
    pub fn new(letters: Vec<Pauli>) -> Result<Self, PauliError> {
        if letters.is_empty() {
            return Err(PauliError::NoQubits);
        }
        Ok(Self { letters })
    }

    /// Zero-width word. Only used as the starting label of the labeling algorithm.
    pub(crate) fn empty() -> Self {
        Self { letters: Vec::new() }
    }

    pub(crate) fn push(&mut self, letter: Pauli) {
        self.letters.push(letter);
    }

    pub fn identity(n: usize) -> Result<Self, PauliError> {
        Self::new(vec![Pauli::I; n])
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&l| l == Pauli::I)
    }

    /// `ψ(self)`, of length `2n`.
    pub fn encode(&self) -> BitVector {
        let mut v = BitVector::zeros(2 * self.letters.len());
        for (k, l) in self.letters.iter().enumerate() {
            let (a, b) = l.encode();
            if a {
                v.set(2 * k, true);
            }
            if b {
                v.set(2 * k + 1, true);
            }
        }
        v
    }

    /// `ψ⁻¹(v)`.
    pub fn decode(v: &BitVector) -> Result<Self, PauliError> {
        if v.len() % 2 == 1 {
            return Err(PauliError::OddLength(v.len()));
        }
        let letters = (0..v.len() / 2)
            .map(|k| Pauli::decode(v.get(2 * k), v.get(2 * k + 1)))
            .collect();
        Self::new(letters)
    }

    pub fn commutes(&self, other: &PauliObservable) -> Result<bool, PauliError> {
        if self.qubits() != other.qubits() {
            return Err(PauliError::QubitCountMismatch {
                left: self.qubits(),
                right: other.qubits(),
            });
        }
        Ok(self.commutes_unchecked(other))
    }

    /// Two letters anticommute iff both are non-identity and differ.
    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &PauliObservable) -> bool {
        self.letters
            .iter()
            .zip(&other.letters)
            .filter(|(&a, &b)| a != Pauli::I && b != Pauli::I && a != b)
            .count()
            % 2
            == 0
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &PauliObservable) -> PauliObservable {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        PauliObservable { letters }
    }
}

impl fmt::Display for PauliObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PauliObservable {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s.chars().map(Pauli::from_char).collect::<Result<Vec<_>, _>>()?;
        Self::new(letters)
    }
}

/// An observable with a phase `i^phase_exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    pub obs: PauliObservable,
    phase_exp: u8,
}

impl PhasedPauli {
    pub fn new(obs: PauliObservable, phase_exp: u8) -> Self {
        Self {
            obs,
            phase_exp: phase_exp % 4,
        }
    }

    pub fn unit(obs: PauliObservable) -> Self {
        Self::new(obs, 0)
    }

    /// Exponent `k` of the phase `i^k`, in `0..4`.
    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn multiply(&self, other: &PhasedPauli) -> Result<PhasedPauli, PauliError> {
        if self.obs.qubits() != other.obs.qubits() {
            return Err(PauliError::QubitCountMismatch {
                left: self.obs.qubits(),
                right: other.obs.qubits(),
            });
        }
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn mul_assign_obs(&mut self, other: &PauliObservable) {
        let mut k = self.phase_exp as u32;
        for (a, &b) in self.obs.letters.iter_mut().zip(&other.letters) {
            let (c, e) = a.mul_phase(b);
            *a = c;
            k += e as u32;
        }
        self.phase_exp = (k % 4) as u8;
    }

    fn mul_assign_unchecked(&mut self, other: &PhasedPauli) {
        self.phase_exp = (self.phase_exp + other.phase_exp) % 4;
        self.mul_assign_obs(&other.obs);
    }
}

/// Symplectic form `Σ x₂ₖ₋₁y₂ₖ + x₂ₖy₂ₖ₋₁` on `𝔽₂^{2n}`.
pub fn symplectic_form(u: &BitVector, v: &BitVector) -> Result<bool, PauliError> {
    if u.len() != v.len() {
        return Err(PauliError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if u.len() % 2 == 1 {
        return Err(PauliError::OddLength(u.len()));
    }
    const EVEN: u64 = 0x5555_5555_5555_5555;
    let ones: u32 = u
        .words()
        .iter()
        .zip(v.words())
        .map(|(&a, &b)| {
            let swapped = ((b & EVEN) << 1) | ((b >> 1) & EVEN);
            (a & swapped).count_ones()
        })
        .sum();
    Ok(ones % 2 == 1)
}

pub fn encode(o: &PauliObservable) -> BitVector {
    o.encode()
}

pub fn decode(v: &BitVector) -> Result<PauliObservable, PauliError> {
    PauliObservable::decode(v)
}

pub fn commutes(p: &PauliObservable, q: &PauliObservable) -> Result<bool, PauliError> {
    p.commutes(q)
}

pub fn multiply(p: &PhasedPauli, q: &PhasedPauli) -> Result<PhasedPauli, PauliError> {
    p.multiply(q)
}

pub fn tensor(p: &PauliObservable, q: &PauliObservable) -> PauliObservable {
    p.tensor(q)
}

/// Left-to-right phase-tracked product of phase-free observables.
pub fn product<'a>(os: impl IntoIterator<Item = &'a PauliObservable>) -> Result<PhasedPauli, PauliError> {
    let mut it = os.into_iter();
    let first = it.next().ok_or(PauliError::EmptyProduct)?;
    let mut acc = PhasedPauli::unit(first.clone());
    for o in it {
        if o.qubits() != acc.obs.qubits() {
            return Err(PauliError::QubitCountMismatch {
                left: acc.obs.qubits(),
                right: o.qubits(),
            });
        }
        acc.mul_assign_obs(o);
    }
    Ok(acc)
}

/// The sign `s` with `∏ os = s · I^{⊗n}` for a context of commuting observables.
pub fn product_sign(os: &[PauliObservable]) -> Result<Sign, PauliError> {
    let first = os.first().ok_or(PauliError::EmptyProduct)?;
    for (i, p) in os.iter().enumerate() {
        if p.qubits() != first.qubits() {
            return Err(PauliError::QubitCountMismatch {
                left: first.qubits(),
                right: p.qubits(),
            });
        }
        for (j, q) in os.iter().enumerate().skip(i + 1) {
            if !p.commutes_unchecked(q) {
                return Err(PauliError::NonCommuting(i, j));
            }
        }
    }
    sign_of_product(product(os)?)
}

pub(crate) fn sign_of_product(prod: PhasedPauli) -> Result<Sign, PauliError> {
    if !prod.obs.is_identity() {
        return Err(PauliError::NonIdentityProduct(prod.obs.to_string()));
    }
    match prod.phase_exp {
        0 => Ok(Sign::Plus),
        2 => Ok(Sign::Minus),
        _ => Err(PauliError::ImaginaryPhase),
    }
}
