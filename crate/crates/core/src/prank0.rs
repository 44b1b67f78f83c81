//! The p-rank zero part `Adm(μ)⁽⁰⁾` of the admissible set.
//!
//! Projection to the finite part is a bijection from `Adm(μ)⁽⁰⁾` to the
//! fixed-point-free elements of `W`, each of which is written `vσ` with
//! `σ ∈ S_g` and a sign vector `v` forced to 1 on the fixed points of `σ`.
//! Within a fixed `σ` the lifts decrease as `v` grows, so the smallest
//! admissible `v` gives the maximum. Its length has a closed form in the
//! statistic `A_σ`, whose maximum over `S_g` is `⌊g²/2⌋`.
//!
//! Two lengths appear side by side: `inversions` on `S_g` and the length on
//! `W̃`. They are kept under different names on purpose.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::admissible::{enumerate_adm_bounded, is_admissible};
use crate::affine::{bruhat_leq, AffineElement, TranslationVector};
use crate::error::{Error, Result};
use crate::finite::{from_signs_and_permutation, SignedPermutation};

pub const MAX_FIXED_POINT_FREE_G: usize = 7;
pub const MAX_SWEEP_G: usize = 10;

/// `σ ∈ S_g` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct SgPermutation {
    map: Vec<u8>,
}

impl SgPermutation {
    pub fn new(map: Vec<u8>) -> Result<Self> {
        let g = map.len();
        if g == 0 {
            return Err(Error::ZeroRank);
        }
        let mut seen = vec![false; g];
        for &a in &map {
            let a = a as usize;
            if a == 0 || a > g || seen[a - 1] {
                return Err(Error::Parse(format!("{map:?} is not a permutation of 1..={g}")));
            }
            seen[a - 1] = true;
        }
        Ok(Self { map })
    }

    pub fn identity(g: usize) -> Self {
        Self { map: (1..=g as u8).collect() }
    }

    /// Product of the disjoint transpositions `(a b)`.
    pub fn from_transpositions(g: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut map: Vec<u8> = (1..=g as u8).collect();
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > g || b > g {
                return Err(Error::IndexOutOfRange { index: a.max(b), g });
            }
            map.swap(a - 1, b - 1);
        }
        Self::new(map)
    }

    /// All of `S_g` in lexicographic order.
    pub fn all(g: usize) -> Vec<Self> {
        (1..=g as u8).permutations(g).map(|map| Self { map }).collect()
    }

    pub fn g(&self) -> usize {
        self.map.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i - 1] as usize
    }

    pub fn one_line(&self) -> &[u8] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0u8; self.g()];
        for (i, &a) in self.map.iter().enumerate() {
            map[a as usize - 1] = i as u8 + 1;
        }
        Self { map }
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.image(i) == i
    }

    pub fn fixed_points(&self) -> usize {
        (1..=self.g()).filter(|&i| self.is_fixed(i)).count()
    }

    /// Length in `S_g`: the number of inversions.
    pub fn inversions(&self) -> usize {
        self.map.iter().tuple_combinations().filter(|(a, b)| a > b).count()
    }
}

impl TryFrom<Vec<u8>> for SgPermutation {
    type Error = Error;

    fn try_from(map: Vec<u8>) -> Result<Self> {
        Self::new(map)
    }
}

impl From<SgPermutation> for Vec<u8> {
    fn from(s: SgPermutation) -> Self {
        s.map
    }
}

impl fmt::Display for SgPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.map.iter().join(","))
    }
}

impl fmt::Debug for SgPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `v ∈ (Z/2)^g`, ordered componentwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct SignVector {
    bits: Vec<u8>,
}

impl SignVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InadmissibleVector(bits));
        }
        Ok(Self { bits })
    }

    pub fn zero(g: usize) -> Self {
        Self { bits: vec![0; g] }
    }

    pub fn g(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i - 1] == 1
    }

    /// Componentwise `self ≤ other`.
    pub fn componentwise_le(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a <= b)
    }

    /// `v(i) = 1` on every fixed point `i` of `σ`.
    pub fn is_admissible_for(&self, sigma: &SgPermutation) -> bool {
        self.g() == sigma.g() && (1..=sigma.g()).all(|i| !sigma.is_fixed(i) || self.get(i))
    }

    /// `v_σ`: the indicator of the fixed points of `σ`.
    pub fn minimal_for(sigma: &SgPermutation) -> Self {
        Self { bits: (1..=sigma.g()).map(|i| u8::from(sigma.is_fixed(i))).collect() }
    }
}

impl TryFrom<Vec<u8>> for SignVector {
    type Error = Error;

    fn try_from(bits: Vec<u8>) -> Result<Self> {
        Self::new(bits)
    }
}

impl From<SignVector> for Vec<u8> {
    fn from(v: SignVector) -> Self {
        v.bits
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.bits)
    }
}

/// `vσ ∈ W`: `σ` acts on both halves, then `v` swaps `i ↔ 2g+1-i` where set.
pub fn embed(v: &SignVector, sigma: &SgPermutation) -> Result<SignedPermutation> {
    if v.g() != sigma.g() {
        return Err(Error::RankMismatch { left: v.g(), right: sigma.g() });
    }
    let signs: Vec<bool> = v.bits.iter().map(|&b| b == 1).collect();
    Ok(from_signs_and_permutation(&signs, &sigma.map))
}

/// `W⁽⁰⁾`, sorted by one-line notation.
pub fn fixed_point_free_elements(g: usize) -> Result<Vec<SignedPermutation>> {
    if g == 0 {
        return Err(Error::ZeroRank);
    }
    if g > MAX_FIXED_POINT_FREE_G {
        return Err(Error::BoundExceeded { g, bound: MAX_FIXED_POINT_FREE_G });
    }
    let mut out: Vec<SignedPermutation> = SgPermutation::all(g)
        .par_iter()
        .flat_map_iter(|sigma| {
            sigma_admissible_vectors(sigma).into_iter().map(move |v| embed(&v, sigma).expect("same rank"))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `t^{λ(w)} w` with `λ(w)(i) = 0` if `w⁻¹(i) > i` and `1` if `w⁻¹(i) < i`.
pub fn lift_to_adm0(w: &SignedPermutation) -> Result<AffineElement> {
    if !w.is_fixed_point_free() {
        return Err(Error::HasFixedPoint(w.to_string()));
    }
    let w_inv = w.inverse();
    let lambda = (1..=2 * w.g()).map(|i| i32::from(w_inv.image(i) < i)).collect();
    AffineElement::new(TranslationVector::new(lambda)?, w.clone())
}

/// Inverse of [`lift_to_adm0`] on `Adm(μ)⁽⁰⁾`.
pub fn project(x: &AffineElement) -> Result<SignedPermutation> {
    if !is_admissible(x) {
        return Err(Error::NotAdmissible(x.to_string()));
    }
    if !x.w().is_fixed_point_free() {
        return Err(Error::HasFixedPoint(x.w().to_string()));
    }
    Ok(x.w().clone())
}

/// The `2^{g-f}` vectors that are 1 on the `f` fixed points of `σ`, in lexicographic order.
pub fn sigma_admissible_vectors(sigma: &SgPermutation) -> Vec<SignVector> {
    let g = sigma.g();
    (0..g)
        .map(|i| if sigma.is_fixed(i + 1) { vec![1u8] } else { vec![0u8, 1] })
        .multi_cartesian_product()
        .map(|bits| SignVector { bits })
        .collect()
}

fn lift_of(v: &SignVector, sigma: &SgPermutation) -> AffineElement {
    lift_to_adm0(&embed(v, sigma).expect("same rank")).expect("σ-admissible vectors give fixed-point-free elements")
}

/// For `v′ ≤ v` both σ-admissible: is `t^{λ(vσ)}vσ ≤ t^{λ(v′σ)}v′σ`?
pub fn lemma84_check(sigma: &SgPermutation, v: &SignVector, v_prime: &SignVector) -> Result<bool> {
    for u in [v, v_prime] {
        if u.g() != sigma.g() {
            return Err(Error::RankMismatch { left: u.g(), right: sigma.g() });
        }
        if !u.is_admissible_for(sigma) {
            return Err(Error::InadmissibleVector(u.bits.clone()));
        }
    }
    if !v_prime.componentwise_le(v) {
        return Err(Error::VectorsNotOrdered);
    }
    Ok(bruhat_leq(&lift_of(v, sigma), &lift_of(v_prime, sigma)))
}

/// `t^{λ_σ}(v_σ σ)`, the largest lift over `σ`.
pub fn maximal_prank0(sigma: &SgPermutation) -> AffineElement {
    lift_of(&SignVector::minimal_for(sigma), sigma)
}

/// `λ_σ(i) = 0` if `σ⁻¹(i) ≥ i`, `1` if `σ⁻¹(i) < i`, for `i ≤ g`.
pub fn lambda_sigma(sigma: &SgPermutation) -> Vec<i32> {
    let inv = sigma.inverse();
    (1..=sigma.g()).map(|i| i32::from(inv.image(i) < i)).collect()
}

/// `A_σ = #{(i, j) : i < j < σ(j) < σ(i)}`.
pub fn a_statistic(sigma: &SgPermutation) -> usize {
    let g = sigma.g();
    (1..=g).tuple_combinations().filter(|&(i, j)| j < sigma.image(j) && sigma.image(j) < sigma.image(i)).count()
}

pub fn inversions(sigma: &SgPermutation) -> usize {
    sigma.inversions()
}

/// `2(ℓ(σ) - 2(A_σ + A_{σ⁻¹})) - (g - fix(σ))`, non-negative for every `σ`.
pub fn lemma85_gap(sigma: &SgPermutation) -> i64 {
    let a = (a_statistic(sigma) + a_statistic(&sigma.inverse())) as i64;
    let lhs = sigma.inversions() as i64 - 2 * a;
    2 * lhs - (sigma.g() - sigma.fixed_points()) as i64
}

/// `(c1, c2, c3, c4)` with `a_i = σ(i)`:
/// `c1 = #{i ≤ j < a_i, a_j > j}`, `c2 = #{a_i < a_j ≤ i, a_j > j}`,
/// `c3 = #{i ≤ j < a_i, a_j ≤ j}`, `c4 = #{a_i < a_j ≤ i, a_j ≤ j}`.
pub fn csz_counts(sigma: &SgPermutation) -> (usize, usize, usize, usize) {
    let g = sigma.g();
    let (mut c1, mut c2, mut c3, mut c4) = (0, 0, 0, 0);
    for i in 1..=g {
        let ai = sigma.image(i);
        for j in 1..=g {
            let aj = sigma.image(j);
            let first = i <= j && j < ai;
            let second = ai < aj && aj <= i;
            if aj > j {
                c1 += usize::from(first);
                c2 += usize::from(second);
            } else {
                c3 += usize::from(first);
                c4 += usize::from(second);
            }
        }
    }
    (c1, c2, c3, c4)
}

/// `g(g+1)/2 + 2A_σ + 2A_{σ⁻¹} - inversions(σ) - fix(σ)`.
pub fn length_formula(sigma: &SgPermutation) -> i64 {
    let g = sigma.g() as i64;
    let a = (a_statistic(sigma) + a_statistic(&sigma.inverse())) as i64;
    g * (g + 1) / 2 + 2 * a - sigma.inversions() as i64 - sigma.fixed_points() as i64
}

/// `(max_σ length_formula(σ), first maximizer)`.
pub fn max_length_formula(g: usize) -> Result<(i64, SgPermutation)> {
    if g == 0 {
        return Err(Error::ZeroRank);
    }
    if g > MAX_SWEEP_G {
        return Err(Error::BoundExceeded { g, bound: MAX_SWEEP_G });
    }
    let best = SgPermutation::all(g)
        .into_par_iter()
        .map(|s| (length_formula(&s), s))
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("S_g is non-empty");
    Ok(best)
}

/// `dim A_I⁽⁰⁾ = ⌊g²/2⌋`, checked against the maximum of the length formula.
pub fn dim_prank0(g: usize) -> Result<usize> {
    let (best, _) = max_length_formula(g)?;
    let expected = g * g / 2;
    if best != expected as i64 {
        return Err(Error::Internal(format!("max length formula {best} != ⌊g²/2⌋ = {expected} for g = {g}")));
    }
    Ok(expected)
}

/// `Adm(μ)⁽⁰⁾` from the full enumeration.
pub fn enumerate_adm0(g: usize, max_g: usize) -> Result<Vec<AffineElement>> {
    Ok(enumerate_adm_bounded(g, max_g)?
        .elements
        .into_iter()
        .filter(|x| x.w().fixed_points_in_first_half() == 0)
        .collect())
}

/// For each `σ`, whether `maximal_prank0(σ)` is maximal in all of `Adm(μ)⁽⁰⁾`.
pub fn global_maximality(g: usize, max_g: usize) -> Result<Vec<(SgPermutation, bool)>> {
    let adm0 = enumerate_adm0(g, max_g)?;
    Ok(SgPermutation::all(g)
        .into_par_iter()
        .map(|s| {
            let x = maximal_prank0(&s);
            let maximal = !adm0.iter().any(|y| *y != x && bruhat_leq(&x, y));
            (s, maximal)
        })
        .collect())
}
