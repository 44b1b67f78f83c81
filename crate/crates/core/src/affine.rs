//! The extended affine Weyl group `W̃ = X_*(T) ⋊ W` of `GSp_{2g}`.
//!
//! Elements are pairs `t^λ w` with the law
//! `(t^λ w)(t^λ' w') = t^(λ + w·λ') (w w')`, where `(w·λ')(w(i)) = λ'(i)`.
//! The affine Weyl group `W_a` is generated by `s_0, ..., s_g`; the length-zero
//! subgroup `Ω ≅ Z` is generated by `τ = w_∅ t^μ`, and the Ω-power of an
//! element equals its similitude factor `c`, where `λ(i) + λ(2g + 1 - i) = c`.
//!
//! Lengths come from the Iwahori-Matsumoto formula. Descents are read off the
//! position of the alcove `x·ω` relative to the walls of the base alcove,
//! which sits in the anti-dominant chamber.

use std::fmt;
use std::ops::Mul;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::SignedPermutation;

/// A cocharacter `λ ∈ Z^{2g}` of the diagonal torus of `GSp_{2g}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct TranslationVector {
    entries: Vec<i32>,
}

impl TranslationVector {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::NotCocharacter { entries });
        }
        let c = entries[0] + entries[n - 1];
        if (0..n).any(|i| entries[i] + entries[n - 1 - i] != c) {
            return Err(Error::NotCocharacter { entries });
        }
        Ok(Self { entries })
    }

    pub fn zero(g: usize) -> Self {
        Self { entries: vec![0; 2 * g] }
    }

    /// `μ = (1^g, 0^g)`.
    pub fn mu(g: usize) -> Self {
        Self { entries: (0..2 * g).map(|i| i32::from(i < g)).collect() }
    }

    pub fn g(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    /// `λ(i)` for `1 <= i <= 2g`.
    pub fn get(&self, i: usize) -> i32 {
        self.entries[i - 1]
    }

    /// The similitude factor `c` with `λ(i) + λ(2g + 1 - i) = c`.
    pub fn similitude(&self) -> i32 {
        self.entries[0] + self.entries[self.entries.len() - 1]
    }

    pub fn permuted(&self, w: &SignedPermutation) -> Self {
        Self { entries: w.act(&self.entries) }
    }

    fn add(&self, other: &Self) -> Self {
        Self { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    fn neg(&self) -> Self {
        Self { entries: self.entries.iter().map(|a| -a).collect() }
    }
}

impl TryFrom<Vec<i32>> for TranslationVector {
    type Error = Error;

    fn try_from(entries: Vec<i32>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<TranslationVector> for Vec<i32> {
    fn from(v: TranslationVector) -> Vec<i32> {
        v.entries
    }
}

impl fmt::Debug for TranslationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(","))
    }
}

/// A positive root of `Sp_{2g}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    /// `β¹_{ij}`, `e_i - e_j` for `i < j`.
    Difference { i: usize, j: usize },
    /// `β²_{ij}`, `e_i + e_j` for `i < j`.
    Sum { i: usize, j: usize },
    /// `β³_i`, `2e_i`.
    Long { i: usize },
}

impl Root {
    /// All `g²` positive roots.
    pub fn positive_roots(g: usize) -> Vec<Root> {
        let mut out = Vec::with_capacity(g * g);
        for (i, j) in (1..=g).tuple_combinations() {
            out.push(Root::Difference { i, j });
            out.push(Root::Sum { i, j });
        }
        out.extend((1..=g).map(|i| Root::Long { i }));
        out
    }

    /// Coordinates carrying `+1` and `-1` in the `Z^{2g}` picture.
    fn signed_support(self, g: usize) -> (Vec<usize>, Vec<usize>) {
        let m = |k: usize| 2 * g + 1 - k;
        match self {
            Root::Difference { i, j } => (vec![i, m(j)], vec![j, m(i)]),
            Root::Sum { i, j } => (vec![i, j], vec![m(j), m(i)]),
            Root::Long { i } => (vec![i], vec![m(i)]),
        }
    }

    /// The root as a vector in `Z^{2g}`.
    pub fn vector(self, g: usize) -> RootVector {
        let mut v = vec![0; 2 * g];
        let (plus, minus) = self.signed_support(g);
        for k in plus {
            v[k - 1] += 1;
        }
        for k in minus {
            v[k - 1] -= 1;
        }
        RootVector(v)
    }

    /// Whether `w⁻¹β` is a positive root.
    pub fn is_positive_after_inverse(self, w: &SignedPermutation) -> bool {
        let w_inv = w.inverse();
        self.is_positive_under(&w_inv)
    }

    fn is_positive_under(self, w_inv: &SignedPermutation) -> bool {
        // (w⁻¹β)(k) = β(w(k)): the first non-zero coordinate sits at min w⁻¹(p).
        let (plus, minus) = self.signed_support(w_inv.g());
        let first = |ps: Vec<usize>| ps.into_iter().map(|p| w_inv.image(p)).min().unwrap();
        first(plus) < first(minus)
    }
}

/// Pairing of a positive root with a cocharacter:
/// `λ(i) - λ(j)`, `λ(i) + λ(j) - c` and `2λ(i) - c` respectively.
pub fn pairing(beta: Root, lambda: &TranslationVector) -> i32 {
    let c = lambda.similitude();
    match beta {
        Root::Difference { i, j } => lambda.get(i) - lambda.get(j),
        Root::Sum { i, j } => lambda.get(i) + lambda.get(j) - c,
        Root::Long { i } => 2 * lambda.get(i) - c,
    }
}

/// An arbitrary (possibly negative) root written as a vector in `Z^{2g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootVector(pub Vec<i32>);

impl RootVector {
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|&&a| a != 0).is_some_and(|&a| a > 0)
    }

    /// `w⁻¹β`, i.e. `(w⁻¹β)(k) = β(w(k))`.
    pub fn act_inverse(&self, w: &SignedPermutation) -> Self {
        RootVector((1..=self.0.len()).map(|k| self.0[w.image(k) - 1]).collect())
    }

    /// Dot product with `λ`, halved for roots with four non-zero coordinates
    /// (the vector picture doubles those).
    pub fn pairing(&self, lambda: &TranslationVector) -> i32 {
        let dot: i32 = self.0.iter().zip(lambda.entries()).map(|(a, b)| a * b).sum();
        let weight = self.0.iter().filter(|&&a| a != 0).count() as i32 / 2;
        dot / weight
    }
}

/// An element `t^λ w` of the extended affine Weyl group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineElement {
    lambda: TranslationVector,
    w: SignedPermutation,
}

impl AffineElement {
    pub fn new(lambda: TranslationVector, w: SignedPermutation) -> Result<Self> {
        if lambda.g() != w.g() {
            return Err(Error::RankMismatch { left: lambda.g(), right: w.g() });
        }
        Ok(Self { lambda, w })
    }

    /// Builds `t^λ w` from raw arrays.
    pub fn from_parts(lambda: Vec<i32>, w: Vec<u8>) -> Result<Self> {
        Self::new(TranslationVector::new(lambda)?, SignedPermutation::new(w)?)
    }

    pub fn identity(g: usize) -> Self {
        Self { lambda: TranslationVector::zero(g), w: SignedPermutation::identity(g) }
    }

    pub fn translation(lambda: TranslationVector) -> Self {
        let g = lambda.g();
        Self { lambda, w: SignedPermutation::identity(g) }
    }

    pub fn finite(w: SignedPermutation) -> Self {
        Self { lambda: TranslationVector::zero(w.g()), w }
    }

    pub fn g(&self) -> usize {
        self.w.g()
    }

    pub fn lambda(&self) -> &TranslationVector {
        &self.lambda
    }

    pub fn w(&self) -> &SignedPermutation {
        &self.w
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.g() != other.g() {
            return Err(Error::RankMismatch { left: self.g(), right: other.g() });
        }
        Ok(Self { lambda: self.lambda.add(&other.lambda.permuted(&self.w)), w: self.w.compose_unchecked(&other.w) })
    }

    /// `(t^λ w)⁻¹ = t^(-w⁻¹λ) w⁻¹`.
    pub fn inverse(&self) -> Self {
        let w_inv = self.w.inverse();
        Self { lambda: self.lambda.permuted(&w_inv).neg(), w: w_inv }
    }

    /// The exponent `k` with `x ∈ W_a τ^k`.
    pub fn omega_power(&self) -> i32 {
        self.lambda.similitude()
    }

    /// Writes `x = t^λ w = w t^ρ` and returns `(w, ρ)` with `ρ = w⁻¹·λ`.
    pub fn decompose_right(&self) -> (SignedPermutation, TranslationVector) {
        (self.w.clone(), self.lambda.permuted(&self.w.inverse()))
    }

    /// Length via the Iwahori-Matsumoto formula
    /// `Σ_{β>0, w⁻¹β>0} |⟨β,λ⟩| + Σ_{β>0, w⁻¹β<0} |⟨β,λ⟩ + 1|`.
    pub fn length(&self) -> usize {
        let g = self.g();
        let w_inv = self.w.inverse();
        Root::positive_roots(g)
            .into_iter()
            .map(|beta| {
                let p = pairing(beta, &self.lambda);
                if beta.is_positive_under(&w_inv) {
                    p.unsigned_abs()
                } else {
                    (p + 1).unsigned_abs()
                }
            })
            .sum::<u32>() as usize
    }

    /// `S(k) = Σ_{i=0}^{g} (x_i(k) - x_i(2g+1-k))` for `k = 1..g`, where
    /// `(x_i)` is the alcove `x·ω`. This is `2(g+1)` times the barycenter.
    fn barycenter_scaled(&self) -> Vec<i64> {
        let g = self.g();
        let n = 2 * g;
        let w_inv = self.w.inverse();
        let column = |k: usize| -> i64 {
            // rows x_i with i >= w⁻¹(k) have dropped coordinate k
            let drops = (g + 1).saturating_sub(w_inv.image(k));
            (g as i64 + 1) * i64::from(self.lambda.get(k)) - drops as i64
        };
        (1..=g).map(|k| column(k) - column(n + 1 - k)).collect()
    }

    /// Left descents `i` (`ℓ(s_i x) < ℓ(x)`), in increasing order.
    pub fn left_descents(&self) -> Vec<usize> {
        let g = self.g();
        let s = self.barycenter_scaled();
        let mut out = Vec::new();
        if s[0] < -(g as i64 + 1) {
            out.push(0);
        }
        out.extend((1..g).filter(|&i| s[i - 1] > s[i]));
        if s[g - 1] > 0 {
            out.push(g);
        }
        out
    }

    pub fn is_left_descent(&self, i: usize) -> bool {
        self.left_descents().contains(&i)
    }

    /// `s_i · x`.
    pub fn left_multiply_simple(&self, i: usize) -> Result<Self> {
        simple_affine(i, self.g())?.multiply(self)
    }

    /// Reduced word by greedy left descents, smallest index first.
    pub fn reduced_word(&self) -> Result<ReducedWord> {
        self.reduced_word_with(DescentOrder::Smallest)
    }

    pub fn reduced_word_with(&self, order: DescentOrder) -> Result<ReducedWord> {
        let g = self.g();
        let expected = self.length();
        let mut letters = Vec::with_capacity(expected);
        let mut x = self.clone();
        loop {
            let descents = x.left_descents();
            let next = match order {
                DescentOrder::Smallest => descents.first(),
                DescentOrder::Largest => descents.last(),
            };
            match next {
                Some(&i) => {
                    letters.push(i);
                    x = x.left_multiply_simple(i)?;
                }
                None => break,
            }
            if letters.len() > expected {
                return Err(Error::Internal(format!("descent walk from {self} exceeds its length")));
            }
        }
        let omega_power = x.omega_power();
        if letters.len() != expected || x != tau_power(g, omega_power) {
            return Err(Error::Internal(format!("no descent found for {x} of length {}", x.length())));
        }
        Ok(ReducedWord { letters, omega_power })
    }

    /// `s_{i_1} ⋯ s_{i_n} τ^k`.
    pub fn from_word(letters: &[usize], omega_power: i32, g: usize) -> Result<Self> {
        let mut x = tau_power(g, omega_power);
        for &i in letters.iter().rev() {
            x = x.left_multiply_simple(i)?;
        }
        Ok(x)
    }

    pub fn record(&self) -> Result<ElementRecord> {
        let word = self.reduced_word()?;
        Ok(ElementRecord {
            g: self.g(),
            lambda: self.lambda.entries().to_vec(),
            w: self.w.one_line().to_vec(),
            length: word.letters.len(),
            word: word.letters,
            omega_power: word.omega_power,
        })
    }
}

impl Mul for &AffineElement {
    type Output = AffineElement;

    fn mul(self, rhs: Self) -> AffineElement {
        self.multiply(rhs).expect("rank mismatch in affine product")
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{:?}{}", self.lambda, self.w)
    }
}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescentOrder {
    Smallest,
    Largest,
}

/// `x = s_{letters[0]} ⋯ s_{letters[n-1]} τ^{omega_power}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
    pub omega_power: i32,
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.letters.is_empty() {
            let sep = if self.letters.iter().all(|&i| i < 10) { "" } else { "," };
            write!(f, "s{}", self.letters.iter().join(sep))?;
        }
        match self.omega_power {
            0 if self.letters.is_empty() => write!(f, "1"),
            0 => Ok(()),
            1 => write!(f, "τ"),
            k => write!(f, "τ^{k}"),
        }
    }
}

/// Serialized form of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub g: usize,
    pub lambda: Vec<i32>,
    pub w: Vec<u8>,
    pub length: usize,
    pub word: Vec<usize>,
    pub omega_power: i32,
}

impl ElementRecord {
    pub fn to_element(&self) -> Result<AffineElement> {
        let x = AffineElement::from_parts(self.lambda.clone(), self.w.clone())?;
        if x.g() != self.g {
            return Err(Error::RankMismatch { left: x.g(), right: self.g });
        }
        Ok(x)
    }
}

/// Simple affine reflections: `s_1, ..., s_g` from `W` and
/// `s_0 = t^(-1, 0, ..., 0, 1) (1 ↔ 2g)`.
pub fn simple_affine(i: usize, g: usize) -> Result<AffineElement> {
    if g == 0 {
        return Err(Error::ZeroRank);
    }
    if i > g {
        return Err(Error::IndexOutOfRange { index: i, g });
    }
    if i > 0 {
        return Ok(AffineElement::finite(SignedPermutation::simple_reflection(i, g)?));
    }
    let n = 2 * g;
    let mut map: Vec<u8> = (1..=n as u8).collect();
    map.swap(0, n - 1);
    let mut lambda = vec![0; n];
    lambda[0] = -1;
    lambda[n - 1] = 1;
    Ok(AffineElement { lambda: TranslationVector { entries: lambda }, w: SignedPermutation::from_map_unchecked(map) })
}

/// `τ = t^(w_∅ μ) w_∅ = w_∅ t^μ`, the length-zero generator of `Ω`.
pub fn tau(g: usize) -> AffineElement {
    let w_empty = AffineElement::finite(SignedPermutation::longest_final(g));
    &w_empty * &AffineElement::translation(TranslationVector::mu(g))
}

pub fn tau_power(g: usize, k: i32) -> AffineElement {
    let base = if k >= 0 { tau(g) } else { tau(g).inverse() };
    (0..k.unsigned_abs()).fold(AffineElement::identity(g), |acc, _| &acc * &base)
}

/// Bruhat order on `W̃`: `uτ^k <= vτ^l` iff `k = l` and `u <= v` in `W_a`.
///
/// Uses the lifting property: with `s` a left descent of `y`,
/// `x <= y` iff `sx <= sy` (when `sx < x`) or `x <= sy` (otherwise).
/// Each step shortens `y`, so the walk is linear in `ℓ(y)`.
pub fn bruhat_leq(x: &AffineElement, y: &AffineElement) -> bool {
    if x.g() != y.g() || x.omega_power() != y.omega_power() {
        return false;
    }
    let mut x = x.clone();
    let mut y = y.clone();
    let mut lx = x.length();
    let mut ly = y.length();
    loop {
        if lx > ly {
            return false;
        }
        if lx == ly {
            return x == y;
        }
        let s = y.left_descents()[0];
        y = y.left_multiply_simple(s).expect("valid generator");
        ly -= 1;
        if x.is_left_descent(s) {
            x = x.left_multiply_simple(s).expect("valid generator");
            lx -= 1;
        }
    }
}

/// Longest element of the (finite) parabolic subgroup `W_J` of `W_a`,
/// generated by `s_i` for `i ∈ {0, ..., g} \ J`.
pub fn longest_affine_parabolic(excluded: &[usize], g: usize) -> Result<AffineElement> {
    if g == 0 {
        return Err(Error::ZeroRank);
    }
    if let Some(&bad) = excluded.iter().find(|&&i| i > g) {
        return Err(Error::IndexOutOfRange { index: bad, g });
    }
    if excluded.is_empty() {
        return Err(Error::InfiniteParabolic);
    }
    let generators: Vec<AffineElement> =
        (0..=g).filter(|i| !excluded.contains(i)).map(|i| simple_affine(i, g)).collect::<Result<_>>()?;
    let mut x = AffineElement::identity(g);
    let mut len = 0;
    'grow: loop {
        for s in &generators {
            let next = &x * s;
            let next_len = next.length();
            if next_len > len {
                x = next;
                len = next_len;
                continue 'grow;
            }
        }
        return Ok(x);
    }
}

/// All elements of the finite parabolic subgroup generated by the given
/// simple affine reflections, sorted canonically.
pub fn parabolic_elements(generators: &[usize], g: usize) -> Result<Vec<AffineElement>> {
    let excluded: Vec<usize> = (0..=g).filter(|i| !generators.contains(i)).collect();
    if excluded.is_empty() {
        return Err(Error::InfiniteParabolic);
    }
    let gens: Vec<AffineElement> = generators.iter().map(|&i| simple_affine(i, g)).collect::<Result<_>>()?;
    let mut seen = std::collections::HashSet::new();
    let mut frontier = vec![AffineElement::identity(g)];
    seen.insert(AffineElement::identity(g));
    while let Some(x) = frontier.pop() {
        for s in &gens {
            let y = &x * s;
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}
