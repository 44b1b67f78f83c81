//! The finite Weyl group `W` of `GSp_{2g}`, realized as the signed permutations
//! of `{1, ..., 2g}` (permutations commuting with `i ↦ 2g + 1 - i`), together
//! with the Ekedahl-Oort combinatorics of final elements.
//!
//! Composition is right to left: `(a ∘ b)(i) = a(b(i))`. With this convention
//! the word `s_1 s_2` is the permutation `[2, 4, 1, 3]`.

use std::fmt;
use std::ops::Mul;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `W ⊂ S_{2g}`, stored in one-line notation `(w(1), ..., w(2g))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct SignedPermutation {
    map: Vec<u8>,
}

impl SignedPermutation {
    /// Validates a one-line array: it must be a bijection of `{1, ..., 2g}`
    /// satisfying `w(2g + 1 - i) = 2g + 1 - w(i)`.
    pub fn new(map: Vec<u8>) -> Result<Self> {
        let n = map.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::NotSymplectic(format!("length {n} is not a positive even number")));
        }
        let mut seen = vec![false; n];
        for &v in &map {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotSymplectic(format!("{map:?} is not a bijection of 1..={n}")));
            }
            seen[v - 1] = true;
        }
        for i in 0..n {
            if map[n - 1 - i] as usize != n + 1 - map[i] as usize {
                return Err(Error::NotSymplectic(format!("{map:?} does not commute with i -> {} - i", n + 1)));
            }
        }
        Ok(Self { map })
    }

    pub(crate) fn from_map_unchecked(map: Vec<u8>) -> Self {
        debug_assert!(Self::new(map.clone()).is_ok(), "{map:?}");
        Self { map }
    }

    pub fn identity(g: usize) -> Self {
        Self { map: (1..=2 * g as u8).collect() }
    }

    /// The simple reflection `s_i`, `1 <= i <= g`.
    pub fn simple_reflection(i: usize, g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::ZeroRank);
        }
        if i == 0 || i > g {
            return Err(Error::IndexOutOfRange { index: i, g });
        }
        let n = 2 * g;
        let mut map: Vec<u8> = (1..=n as u8).collect();
        if i < g {
            map.swap(i - 1, i);
            map.swap(n - i - 1, n - i);
        } else {
            map.swap(g - 1, g);
        }
        Ok(Self { map })
    }

    /// The longest element `w_0`, i.e. `i ↦ 2g + 1 - i`.
    pub fn longest(g: usize) -> Self {
        Self { map: (1..=2 * g as u8).rev().collect() }
    }

    /// `w_∅`, the longest final element and the finite part of `τ`: `i ↦ g + i`.
    pub fn longest_final(g: usize) -> Self {
        let n = 2 * g as u8;
        let g = g as u8;
        Self { map: (1..=n).map(|i| if i <= g { g + i } else { i - g }).collect() }
    }

    pub fn g(&self) -> usize {
        self.map.len() / 2
    }

    /// `w(i)` for `1 <= i <= 2g`.
    pub fn image(&self, i: usize) -> usize {
        self.map[i - 1] as usize
    }

    pub fn one_line(&self) -> &[u8] {
        &self.map
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.g() != other.g() {
            return Err(Error::RankMismatch { left: self.g(), right: other.g() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self { map: other.map.iter().map(|&b| self.map[b as usize - 1]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0u8; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v as usize - 1] = i as u8 + 1;
        }
        Self { map }
    }

    /// Permutes coordinates: `(w·λ)(w(i)) = λ(i)`.
    pub fn act<T: Copy + Default>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.map.len(), "vector length does not match rank");
        let mut out = vec![T::default(); v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.map[i] as usize - 1] = x;
        }
        out
    }

    /// Coxeter length with respect to `s_1, ..., s_g`, computed as
    /// `(inv(w) + #{i <= g : w(i) > g}) / 2` where `inv` counts inversions in `S_{2g}`.
    pub fn length(&self) -> usize {
        let g = self.g();
        let inversions = self.map.iter().tuple_combinations().filter(|(a, b)| a > b).count();
        let negatives = self.map[..g].iter().filter(|&&v| v as usize > g).count();
        (inversions + negatives) / 2
    }

    /// `w(1) < w(2) < ... < w(g)`.
    pub fn is_final(&self) -> bool {
        let g = self.g();
        self.map[..g].windows(2).all(|p| p[0] < p[1])
    }

    /// `#{i ∈ {1, ..., g} : w(i) = i}`.
    pub fn fixed_points_in_first_half(&self) -> usize {
        let g = self.g();
        (1..=g).filter(|&i| self.image(i) == i).count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_points_in_first_half() == 0
    }

    /// First generator `s_i` (in the given order) with `ℓ(w s_i) > ℓ(w)`.
    fn right_ascents(&self, generators: &[usize]) -> Option<usize> {
        let len = self.length();
        generators.iter().copied().find(|&i| {
            let s = Self::simple_reflection(i, self.g()).expect("validated generator");
            self.compose_unchecked(&s).length() > len
        })
    }

    /// Every element of `W`, sorted by one-line notation. `|W| = 2^g g!`.
    pub fn all_elements(g: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity((1 << g) * (1..=g).product::<usize>());
        for sigma in (1..=g as u8).permutations(g) {
            for signs in 0u32..(1 << g) {
                let bits: Vec<bool> = (0..g).map(|i| signs >> i & 1 == 1).collect();
                out.push(from_signs_and_permutation(&bits, &sigma));
            }
        }
        out.sort();
        out
    }

    /// All final elements, sorted by `(length, one-line)`.
    ///
    /// A final element is determined by the set `w({1, ..., g})`, which
    /// contains exactly one of `k`, `2g + 1 - k` for each `k <= g`.
    pub fn enumerate_final(g: usize) -> Vec<Self> {
        let n = 2 * g;
        let mut out: Vec<Self> = (0u32..(1 << g))
            .map(|choice| {
                let mut first: Vec<u8> =
                    (1..=g).map(|k| if choice >> (k - 1) & 1 == 1 { (n + 1 - k) as u8 } else { k as u8 }).collect();
                first.sort_unstable();
                let mut map = vec![0u8; n];
                for (i, &v) in first.iter().enumerate() {
                    map[i] = v;
                    map[n - 1 - i] = (n + 1) as u8 - v;
                }
                Self::from_map_unchecked(map)
            })
            .collect();
        out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
        out
    }
}

/// `v·σ` where `σ ∈ S_g` is doubled to `W` and `v` flips `i ↔ 2g + 1 - i` where set.
pub(crate) fn from_signs_and_permutation(signs: &[bool], sigma: &[u8]) -> SignedPermutation {
    let g = sigma.len();
    let n = 2 * g;
    let mut doubled = vec![0u8; n];
    let mut flips: Vec<u8> = (1..=n as u8).collect();
    for i in 0..g {
        doubled[i] = sigma[i];
        doubled[n - 1 - i] = (n + 1) as u8 - sigma[i];
        if signs[i] {
            flips[i] = (n - i) as u8;
            flips[n - 1 - i] = i as u8 + 1;
        }
    }
    SignedPermutation::from_map_unchecked(flips).compose_unchecked(&SignedPermutation::from_map_unchecked(doubled))
}

impl Mul for &SignedPermutation {
    type Output = SignedPermutation;

    fn mul(self, rhs: Self) -> SignedPermutation {
        self.compose(rhs).expect("rank mismatch in signed permutation product")
    }
}

impl TryFrom<Vec<u8>> for SignedPermutation {
    type Error = Error;

    fn try_from(map: Vec<u8>) -> Result<Self> {
        Self::new(map)
    }
}

impl From<SignedPermutation> for Vec<u8> {
    fn from(w: SignedPermutation) -> Vec<u8> {
        w.map
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.map.iter().join(","))
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Longest element of the subgroup generated by the given finite simple
/// reflections (indices in `1..=g`).
pub fn longest_in_generated(generators: &[usize], g: usize) -> Result<SignedPermutation> {
    if g == 0 {
        return Err(Error::ZeroRank);
    }
    if generators.contains(&0) {
        return Err(Error::AffineParabolic);
    }
    if let Some(&bad) = generators.iter().find(|&&i| i > g) {
        return Err(Error::IndexOutOfRange { index: bad, g });
    }
    let mut w = SignedPermutation::identity(g);
    while let Some(i) = w.right_ascents(generators) {
        w = w.compose_unchecked(&SignedPermutation::simple_reflection(i, g)?);
    }
    Ok(w)
}

/// Longest element of `W_J`, the subgroup generated by `s_i` for
/// `i ∈ {0, ..., g} \ J`. Only finite parabolics (`0 ∈ J`) are accepted here.
pub fn longest_element_parabolic(excluded: &[usize], g: usize) -> Result<SignedPermutation> {
    if let Some(&bad) = excluded.iter().find(|&&i| i > g) {
        return Err(Error::IndexOutOfRange { index: bad, g });
    }
    if !excluded.contains(&0) {
        return Err(Error::AffineParabolic);
    }
    let generators: Vec<usize> = (1..=g).filter(|i| !excluded.contains(i)).collect();
    longest_in_generated(&generators, g)
}

/// An elementary sequence `φ(1), ..., φ(g)` with the implicit `φ(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementarySequence {
    values: Vec<u32>,
}

impl ElementarySequence {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let mut prev = 0u32;
        for &v in &values {
            if v < prev || v > prev + 1 {
                return Err(Error::InvalidElementarySequence(values));
            }
            prev = v;
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn sum(&self) -> u32 {
        self.values.iter().sum()
    }
}

fn require_final(w: &SignedPermutation) -> Result<()> {
    if w.is_final() {
        Ok(())
    } else {
        Err(Error::NotFinal(w.to_string()))
    }
}

/// `ν_w(i) = i - #{a ∈ {1, ..., g} : w(a) <= i}`.
pub fn final_to_nu(w: &SignedPermutation) -> Result<ElementarySequence> {
    require_final(w)?;
    let g = w.g();
    let values = (1..=g).map(|i| (i - (1..=g).filter(|&a| w.image(a) <= i).count()) as u32).collect();
    ElementarySequence::new(values)
}

/// `φ_w(i) = #{a ∈ {1, ..., i} : w(a) > g}` (Moonen-Wedhorn convention).
pub fn mw_to_phi(w: &SignedPermutation) -> ElementarySequence {
    let g = w.g();
    let mut count = 0u32;
    let values = (1..=g)
        .map(|a| {
            if w.image(a) > g {
                count += 1;
            }
            count
        })
        .collect();
    ElementarySequence { values }
}

/// Dimension of the EO stratum: `ℓ(w)`.
pub fn eo_dimension(w: &SignedPermutation) -> Result<usize> {
    require_final(w)?;
    Ok(w.length())
}

/// p-rank on the EO stratum: `#{i <= g : w(i) = g + i}`.
pub fn eo_prank(w: &SignedPermutation) -> Result<usize> {
    require_final(w)?;
    let g = w.g();
    Ok((1..=g).filter(|&i| w.image(i) == g + i).count())
}

/// Whether the EO stratum lies in the supersingular locus:
/// `w(i) = i` for `1 <= i <= g - ⌊g/2⌋`.
pub fn eo_supersingular(w: &SignedPermutation) -> Result<bool> {
    require_final(w)?;
    let g = w.g();
    Ok((1..=g - g / 2).all(|i| w.image(i) == i))
}
