//! Extended alcoves `(x_0, ..., x_{2g})`, `x_i ∈ Z^{2g}`, and the
//! reconstruction of an admissible element from its truncation
//! `x̃_i(j) = min(x_i(j), 0)`.

use serde::{Deserialize, Serialize};

use crate::affine::{AffineElement, TranslationVector};
use crate::error::{Error, Result};
use crate::finite::SignedPermutation;

/// Row `i` of the base alcove: `ω_i = ((-1)^i, 0^(2g-i))`.
fn omega_row(g: usize, i: usize) -> Vec<i32> {
    (0..2 * g).map(|j| if j < i { -1 } else { 0 }).collect()
}

/// Position (1-based) of the single `-1` in `next - prev`, or `None` if the
/// rows are equal. Anything else is malformed.
fn single_drop(prev: &[i32], next: &[i32]) -> std::result::Result<Option<usize>, String> {
    let mut drop = None;
    for (j, (a, b)) in prev.iter().zip(next).enumerate() {
        match b - a {
            0 => {}
            -1 if drop.is_none() => drop = Some(j + 1),
            _ => return Err(format!("rows {prev:?} -> {next:?} differ by more than one -1")),
        }
    }
    Ok(drop)
}

/// Completes the images on the positions in `known` to a signed permutation
/// using `w(2g + 1 - i) = 2g + 1 - w(i)`.
fn complete_signed(known: &[(usize, usize)], n: usize) -> Option<SignedPermutation> {
    let mut map = vec![0u8; n];
    for &(i, v) in known {
        for (pos, val) in [(i, v), (n + 1 - i, n + 1 - v)] {
            if map[pos - 1] != 0 && map[pos - 1] as usize != val {
                return None;
            }
            map[pos - 1] = val as u8;
        }
    }
    SignedPermutation::new(map).ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtendedAlcove {
    rows: Vec<Vec<i32>>,
}

impl ExtendedAlcove {
    /// Validates shape, `x_{2g} = x_0 - (1, ..., 1)` and the single-drop
    /// condition between consecutive rows.
    pub fn new(rows: Vec<Vec<i32>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if n == 0 || !n.is_multiple_of(2) || rows.len() != n + 1 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedAlcove("expected a (2g+1) x 2g matrix".into()));
        }
        let mut dropped = vec![false; n];
        for pair in rows.windows(2) {
            match single_drop(&pair[0], &pair[1]) {
                Ok(Some(j)) if !dropped[j - 1] => dropped[j - 1] = true,
                Ok(_) => return Err(Error::MalformedAlcove(format!("rows {:?} -> {:?}", pair[0], pair[1]))),
                Err(e) => return Err(Error::MalformedAlcove(e)),
            }
        }
        Ok(Self { rows })
    }

    pub fn base(g: usize) -> Self {
        Self { rows: (0..=2 * g).map(|i| omega_row(g, i)).collect() }
    }

    pub fn g(&self) -> usize {
        self.rows[0].len() / 2
    }

    pub fn rows(&self) -> &[Vec<i32>] {
        &self.rows
    }

    /// `x.(y_i) = (λ + w(y_i))`.
    pub fn act(&self, x: &AffineElement) -> Result<Self> {
        if x.g() != self.g() {
            return Err(Error::RankMismatch { left: x.g(), right: self.g() });
        }
        let lambda = x.lambda().entries();
        let rows =
            self.rows.iter().map(|row| x.w().act(row).iter().zip(lambda).map(|(a, b)| a + b).collect()).collect();
        Ok(Self { rows })
    }

    /// The unique `x ∈ W̃` with `x.ω = self`.
    pub fn to_element(&self) -> Result<AffineElement> {
        let n = self.rows[0].len();
        let lambda = TranslationVector::new(self.rows[0].clone())
            .map_err(|_| Error::MalformedAlcove(format!("x_0 = {:?} is not a cocharacter", self.rows[0])))?;
        let known: Vec<(usize, usize)> = self
            .rows
            .windows(2)
            .enumerate()
            .map(|(i, pair)| (i + 1, single_drop(&pair[0], &pair[1]).ok().flatten().unwrap_or(0)))
            .collect();
        let w = complete_signed(&known, n)
            .ok_or_else(|| Error::MalformedAlcove("step directions are not a signed permutation".into()))?;
        let x = AffineElement::new(lambda, w)?;
        if element_to_alcove(&x) != *self {
            return Err(Error::MalformedAlcove("rows are not the image of the base alcove".into()));
        }
        Ok(x)
    }

    /// `(x_i - ω_i)(j) ∈ {0, 1}` for all `i, j`, and the element lies in `W_a τ`.
    pub fn is_permissible(&self) -> bool {
        let g = self.g();
        let entrywise = self
            .rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().zip(omega_row(g, i)).all(|(a, b)| matches!(a - b, 0 | 1)));
        entrywise && self.to_element().is_ok_and(|x| x.omega_power() == 1)
    }

    pub fn truncate(&self) -> TruncatedAlcove {
        TruncatedAlcove { rows: self.rows.iter().map(|r| r.iter().map(|&a| a.min(0)).collect()).collect() }
    }
}

pub fn base_alcove(g: usize) -> ExtendedAlcove {
    ExtendedAlcove::base(g)
}

pub fn act(x: &AffineElement, a: &ExtendedAlcove) -> Result<ExtendedAlcove> {
    a.act(x)
}

pub fn element_to_alcove(x: &AffineElement) -> ExtendedAlcove {
    ExtendedAlcove::base(x.g()).act(x).expect("same rank")
}

pub fn alcove_to_element(a: &ExtendedAlcove) -> Result<AffineElement> {
    a.to_element()
}

/// Relative position of an extended flag: rows with entries in `{0, -1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedAlcove {
    rows: Vec<Vec<i32>>,
}

/// `λ(x)`, `ρ(x)` and the finite part `w`, read off a truncated alcove.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovered {
    pub lambda: TranslationVector,
    pub rho: TranslationVector,
    pub w: SignedPermutation,
}

impl Recovered {
    pub fn element(&self) -> Result<AffineElement> {
        AffineElement::new(self.lambda.clone(), self.w.clone())
    }
}

impl TruncatedAlcove {
    pub fn new(rows: Vec<Vec<i32>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if n == 0 || !n.is_multiple_of(2) || rows.len() != n + 1 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTruncation("expected a (2g+1) x 2g matrix".into()));
        }
        if rows.iter().flatten().any(|&a| a != 0 && a != -1) {
            return Err(Error::MalformedTruncation("entries must be 0 or -1".into()));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<i32>] {
        &self.rows
    }

    pub fn g(&self) -> usize {
        self.rows[0].len() / 2
    }

    /// Recovers `λ = x̃_{2g} + (1, ..., 1)`, `ρ(i) = [x̃_{i-1} = x̃_i]`, and `w`
    /// from the positions of the drops `x̃_i - x̃_{i-1} = -e_{w(i)}`.
    pub fn recover(&self) -> Result<Recovered> {
        let n = self.rows[0].len();
        let mut rho = Vec::with_capacity(n);
        let mut known = Vec::new();
        for (i, pair) in self.rows.windows(2).enumerate() {
            match single_drop(&pair[0], &pair[1]).map_err(Error::MalformedTruncation)? {
                None => rho.push(1),
                Some(j) => {
                    rho.push(0);
                    known.push((i + 1, j));
                }
            }
        }
        let malformed = |what: &str| Error::MalformedTruncation(what.to_string());
        let lambda = TranslationVector::new(self.rows[n].iter().map(|a| a + 1).collect())
            .map_err(|_| malformed("x̃_2g + 1 is not a cocharacter"))?;
        let rho = TranslationVector::new(rho).map_err(|_| malformed("step pattern is not symmetric"))?;
        let w = complete_signed(&known, n).ok_or_else(|| malformed("drops do not determine a signed permutation"))?;
        if lambda.permuted(&w.inverse()) != rho {
            return Err(malformed("λ, ρ and w are inconsistent"));
        }
        Ok(Recovered { lambda, rho, w })
    }

    /// The relative position `v ∈ W` of the flag `x'_0 ⊂ ... ⊂ x'_g`, where
    /// `x'_i` is the row with coordinate sum `-i`; `v(ω_i) = x'_i`.
    pub fn flag_position(&self) -> Result<SignedPermutation> {
        let g = self.g();
        let n = 2 * g;
        let flag: Vec<&Vec<i32>> = (0..=g)
            .map(|i| {
                let mut matches = self.rows.iter().filter(|r| r.iter().sum::<i32>() == -(i as i32));
                let first = matches
                    .next()
                    .ok_or_else(|| Error::MalformedTruncation(format!("no row with coordinate sum -{i}")))?;
                if matches.any(|r| r != first) {
                    return Err(Error::MalformedTruncation(format!("rows with sum -{i} disagree")));
                }
                Ok(first)
            })
            .collect::<Result<_>>()?;
        let mut known = Vec::with_capacity(g);
        for (i, pair) in flag.windows(2).enumerate() {
            match single_drop(pair[0], pair[1]).map_err(Error::MalformedTruncation)? {
                Some(j) => known.push((i + 1, j)),
                None => return Err(Error::MalformedTruncation("flag steps must be strict".into())),
            }
        }
        complete_signed(&known, n).ok_or_else(|| Error::MalformedTruncation("flag is not isotropic".into()))
    }
}

pub fn truncate(a: &ExtendedAlcove) -> TruncatedAlcove {
    a.truncate()
}

pub fn recover(t: &TruncatedAlcove) -> Result<Recovered> {
    t.recover()
}

pub fn flag_position(t: &TruncatedAlcove) -> Result<SignedPermutation> {
    t.flag_position()
}

/// The final element `w_ρ` with `w_ρ(μ) = w_0(ρ)`.
///
/// `w_ρ(μ)` has its ones exactly at `w_ρ({1, ..., g})`, so the final element
/// lists `{j : ρ(2g + 1 - j) = 1}` in increasing order.
pub fn w_rho(rho: &TranslationVector) -> Result<SignedPermutation> {
    let g = rho.g();
    let n = 2 * g;
    let entries = rho.entries();
    if rho.similitude() != 1 || entries.iter().any(|&a| a != 0 && a != 1) {
        return Err(Error::NotInOrbit(entries.to_vec()));
    }
    let target = SignedPermutation::longest(g).act(entries);
    let ones: Vec<usize> = (1..=n).filter(|&j| target[j - 1] == 1).collect();
    let known: Vec<(usize, usize)> = ones.iter().enumerate().map(|(i, &v)| (i + 1, v)).collect();
    complete_signed(&known, n).ok_or_else(|| Error::NotInOrbit(entries.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::tau;

    fn el(lambda: &[i32], w: &[u8]) -> AffineElement {
        AffineElement::from_parts(lambda.to_vec(), w.to_vec()).unwrap()
    }

    #[test]
    fn base_alcove_rows() {
        assert_eq!(base_alcove(1).rows(), &[vec![0, 0], vec![-1, 0], vec![-1, -1]]);
        assert_eq!(base_alcove(2).rows()[2], vec![-1, -1, 0, 0]);
        for g in 1..=5 {
            let b = base_alcove(g);
            let shifted: Vec<i32> = b.rows()[0].iter().map(|a| a - 1).collect();
            assert_eq!(b.rows()[2 * g], shifted);
            assert_eq!(ExtendedAlcove::new(b.rows().to_vec()).unwrap(), b);
        }
    }

    #[test]
    fn action_examples() {
        let id = AffineElement::identity(2);
        assert_eq!(act(&id, &base_alcove(2)).unwrap(), base_alcove(2));
        let t_mu = AffineElement::translation(TranslationVector::mu(2));
        assert_eq!(element_to_alcove(&t_mu).rows()[0], vec![1, 1, 0, 0]);
        assert_eq!(element_to_alcove(&tau(2)).rows()[2], vec![0, 0, 0, 0]);
        assert!(act(&id, &base_alcove(3)).is_err());
    }

    #[test]
    fn tau_alcove() {
        let a = element_to_alcove(&tau(2));
        assert_eq!(a.rows()[0], vec![0, 0, 1, 1]);
        assert_eq!(a.rows()[4], vec![-1, -1, 0, 0]);
        assert_eq!(alcove_to_element(&a).unwrap(), tau(2));
        assert_eq!(alcove_to_element(&base_alcove(2)).unwrap(), AffineElement::identity(2));
    }

    #[test]
    fn rejects_malformed_alcoves() {
        let mut rows = base_alcove(2).rows().to_vec();
        rows[1] = vec![-1, -1, 0, 0];
        assert!(ExtendedAlcove::new(rows).is_err());
        assert!(ExtendedAlcove::new(vec![vec![0, 0]]).is_err());
        // a cycle of drops that is not a signed permutation
        let rows =
            vec![vec![0, 0, 0, 0], vec![-1, 0, 0, 0], vec![-1, -1, 0, 0], vec![-1, -1, -1, 0], vec![-1, -1, -1, -1]];
        assert!(ExtendedAlcove::new(rows.clone()).unwrap().to_element().is_ok());
        let rows =
            vec![vec![0, 0, 0, 0], vec![-1, 0, 0, 0], vec![-1, 0, 0, -1], vec![-1, -1, 0, -1], vec![-1, -1, -1, -1]];
        assert!(ExtendedAlcove::new(rows).unwrap().to_element().is_err());
    }

    #[test]
    fn permissibility_examples() {
        assert!(element_to_alcove(&tau(2)).is_permissible());
        let t_2mu = AffineElement::translation(TranslationVector::new(vec![2, 2, 0, 0]).unwrap());
        assert!(!element_to_alcove(&t_2mu).is_permissible());
        for w in SignedPermutation::all_elements(2) {
            let t = AffineElement::translation(TranslationVector::mu(2).permuted(&w));
            assert!(element_to_alcove(&t).is_permissible());
        }
        // right entries, wrong coset
        assert!(!base_alcove(2).is_permissible());
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncate(&base_alcove(2)).rows(), base_alcove(2).rows());
        let t_mu = AffineElement::translation(TranslationVector::mu(2));
        assert_eq!(truncate(&element_to_alcove(&t_mu)).rows()[0], vec![0, 0, 0, 0]);
        assert_eq!(truncate(&element_to_alcove(&tau(2))).rows()[0], vec![0, 0, 0, 0]);
    }

    #[test]
    fn recover_examples() {
        let r = recover(&truncate(&element_to_alcove(&tau(2)))).unwrap();
        assert_eq!(r.rho, TranslationVector::mu(2));
        assert_eq!(r.w, SignedPermutation::longest_final(2));
        assert_eq!(r.element().unwrap(), tau(2));

        let t_mu = AffineElement::translation(TranslationVector::mu(2));
        let r = recover(&truncate(&element_to_alcove(&t_mu))).unwrap();
        assert_eq!(r.lambda, TranslationVector::mu(2));
        assert_eq!(r.rho, TranslationVector::mu(2));
        assert_eq!(r.w, SignedPermutation::identity(2));
    }

    #[test]
    fn recover_rejects_malformed() {
        let mut rows = truncate(&element_to_alcove(&tau(2))).rows().to_vec();
        rows[1] = vec![-1, -1, 0, 0];
        let t = TruncatedAlcove::new(rows).unwrap();
        assert!(matches!(recover(&t), Err(Error::MalformedTruncation(_))));
        assert!(TruncatedAlcove::new(vec![vec![1, 0], vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn flag_position_examples() {
        // τ = vτ forces v = id
        let v = flag_position(&truncate(&element_to_alcove(&tau(2)))).unwrap();
        assert_eq!(v, SignedPermutation::identity(2));
        let t_mu = AffineElement::translation(TranslationVector::mu(2));
        let v = flag_position(&truncate(&element_to_alcove(&t_mu))).unwrap();
        assert_eq!(v, SignedPermutation::longest_final(2));
    }

    #[test]
    fn w_rho_examples() {
        assert_eq!(w_rho(&TranslationVector::mu(2)).unwrap(), SignedPermutation::longest_final(2));
        let rho = TranslationVector::new(vec![0, 1, 0, 1]).unwrap();
        let u = w_rho(&rho).unwrap();
        assert!(u.is_final());
        assert_eq!(TranslationVector::mu(2).permuted(&u), rho.permuted(&SignedPermutation::longest(2)));
        assert!(w_rho(&TranslationVector::new(vec![2, 0, 1, -1]).unwrap()).is_err());
        assert!(w_rho(&TranslationVector::zero(2)).is_err());
    }

    #[test]
    fn w_rho_is_the_unique_final_solution() {
        for g in 1..=4 {
            let mu = TranslationVector::mu(g);
            let w0 = SignedPermutation::longest(g);
            let finals = SignedPermutation::enumerate_final(g);
            for w in SignedPermutation::all_elements(g) {
                let rho = mu.permuted(&w);
                let target = rho.permuted(&w0);
                let solutions: Vec<_> = finals.iter().filter(|u| mu.permuted(u) == target).collect();
                assert_eq!(solutions, vec![&w_rho(&rho).unwrap()]);
            }
        }
    }

    #[test]
    fn alcove_round_trip_on_arbitrary_elements() {
        let x = el(&[2, -1, 0, 1, 2, -1], &[2, 6, 4, 3, 1, 5]);
        assert_eq!(alcove_to_element(&element_to_alcove(&x)).unwrap(), x);
    }
}
