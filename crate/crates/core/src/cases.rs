//! Dual pair case selection and derived combinatorial data.
//!
//! Three families are supported:
//!
//! * case A: `(U(p,q), U(m,m))` with `m = r + s`,
//! * case B: `(Sp(2n,ℝ), O(2r,2r))`,
//! * case C: `(O*(2n), Sp(r,r))`.
//!
//! Cases B and C are realized inside the `U(n,n)` picture, so the row count
//! of the Fock space is `p + q` with `p = q = n` there.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum DualPairCase {
    A { p: u8, q: u8, r: u8, s: u8 },
    B { n: u8, r: u8 },
    C { n: u8, r: u8 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CaseError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("parameters exceed the default desk-scale ceiling ({0}); pass --force to override")]
    Ceiling(String),
}

impl DualPairCase {
    pub fn a(p: u8, q: u8, r: u8, s: u8) -> Self {
        DualPairCase::A { p, q, r, s }
    }
    pub fn b(n: u8, r: u8) -> Self {
        DualPairCase::B { n, r }
    }
    pub fn c(n: u8, r: u8) -> Self {
        DualPairCase::C { n, r }
    }

    /// Validate the case invariants (independent of size ceilings).
    pub fn validate(&self) -> Result<(), CaseError> {
        match *self {
            DualPairCase::A { p, q, r, s } => {
                if p == 0 || q == 0 {
                    return Err(CaseError::Invalid("need p ≥ 1 and q ≥ 1".into()));
                }
                if r == 0 || r > p {
                    return Err(CaseError::Invalid(format!(
                        "need 1 ≤ r ≤ p, got r={r}, p={p}"
                    )));
                }
                if s > q {
                    return Err(CaseError::Invalid(format!(
                        "need 0 ≤ s ≤ q, got s={s}, q={q}"
                    )));
                }
            }
            DualPairCase::B { n, r } => {
                if r == 0 || r > n {
                    return Err(CaseError::Invalid(format!(
                        "need 1 ≤ r ≤ n, got r={r}, n={n}"
                    )));
                }
            }
            DualPairCase::C { n, r } => {
                if r == 0 || r > n {
                    return Err(CaseError::Invalid(format!(
                        "need 1 ≤ r ≤ n, got r={r}, n={n}"
                    )));
                }
                if n < r + 1 {
                    return Err(CaseError::Invalid(
                        "need n ≥ r+1 so the harmonic exponent n-r-1 is nonnegative".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Default desk-scale ceiling: `d' ≤ 4` and `p+q ≤ 4` (i.e. `n ≤ 3`
    /// remains within `p+q = 2n ≤ 6` only for the smallest ranks, so B and C
    /// are bounded by `n ≤ 3` directly).
    pub fn check_ceiling(&self) -> Result<(), CaseError> {
        let over = match *self {
            DualPairCase::A { p, q, .. } => p + q > 4,
            DualPairCase::B { n, .. } | DualPairCase::C { n, .. } => n > 3,
        } || self.dprime() > 4;
        if over {
            Err(CaseError::Ceiling(format!("{self}")))
        } else {
            Ok(())
        }
    }

    /// Rows of the Fock variables: `p+q` (cases B and C sit inside `U(n,n)`).
    pub fn rows(&self) -> u8 {
        match *self {
            DualPairCase::A { p, q, .. } => p + q,
            DualPairCase::B { n, .. } | DualPairCase::C { n, .. } => 2 * n,
        }
    }

    /// The `p` of the ambient `U(p,q)` picture.
    pub fn p_rows(&self) -> u8 {
        match *self {
            DualPairCase::A { p, .. } => p,
            DualPairCase::B { n, .. } | DualPairCase::C { n, .. } => n,
        }
    }

    /// Rank of the `G'`-side module (size of the moment matrix β).
    pub fn m_rank(&self) -> u8 {
        match *self {
            DualPairCase::A { r, s, .. } => r + s,
            DualPairCase::B { r, .. } => 2 * r,
            DualPairCase::C { r, .. } => r,
        }
    }

    /// Number of complex coordinate columns of the Schrödinger model (equals
    /// the number of `u⁺` columns and of `u⁻` columns of the Fock space).
    pub fn m_cols(&self) -> u8 {
        match *self {
            DualPairCase::A { r, s, .. } => r + s,
            DualPairCase::B { r, .. } | DualPairCase::C { r, .. } => r,
        }
    }

    /// Complex codimension `d'` of the special subsymmetric space; this is
    /// also `|I|`.
    pub fn dprime(&self) -> u32 {
        self.index_set().len() as u32
    }

    /// The index set `I` labelling the normal directions.
    pub fn index_set(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        match *self {
            DualPairCase::A { p, q, r, s } => {
                for a in 1..=r {
                    for mu in p + 1..=p + q {
                        out.push((a, mu));
                    }
                }
                for a in r + 1..=p {
                    for mu in p + 1..=p + s {
                        out.push((a, mu));
                    }
                }
                out.sort();
            }
            DualPairCase::B { n, r } => {
                for a in 1..=r {
                    for b in a..=n {
                        out.push((a, b));
                    }
                }
            }
            DualPairCase::C { n, r } => {
                for a in 1..=r {
                    for b in a + 1..=n {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    /// Index pairs `(a,b)` labelling the basis of `𝔭₊` in the ambient
    /// picture.
    pub fn p_plus_indices(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        match *self {
            DualPairCase::A { p, q, .. } => {
                for a in 1..=p {
                    for mu in p + 1..=p + q {
                        out.push((a, mu));
                    }
                }
            }
            DualPairCase::B { n, .. } => {
                for a in 1..=n {
                    for b in a..=n {
                        out.push((a, b));
                    }
                }
            }
            DualPairCase::C { n, .. } => {
                for a in 1..=n {
                    for b in a + 1..=n {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }

    /// Exponent `e` of the Siegel scaling prefactor `t^e`.
    pub fn siegel_exponent(&self) -> u32 {
        match *self {
            DualPairCase::A { p, q, r, s } => (p as u32 + q as u32) * (r as u32 + s as u32),
            DualPairCase::B { n, r } | DualPairCase::C { n, r } => 2 * n as u32 * r as u32,
        }
    }
}

impl fmt::Display for DualPairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DualPairCase::A { p, q, r, s } => write!(f, "A({p},{q},{r},{s})"),
            DualPairCase::B { n, r } => write!(f, "B({n},{r})"),
            DualPairCase::C { n, r } => write!(f, "C({n},{r})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_set_case_a_2211() {
        let c = DualPairCase::a(2, 2, 1, 1);
        assert_eq!(c.index_set(), vec![(1, 3), (1, 4), (2, 3)]);
        assert_eq!(c.dprime(), 3);
    }

    #[test]
    fn index_set_case_b_21() {
        let c = DualPairCase::b(2, 1);
        assert_eq!(c.index_set(), vec![(1, 1), (1, 2)]);
        // d' = n(n+1)/2 - (n-r)(n-r+1)/2
        assert_eq!(c.dprime(), 2);
    }

    #[test]
    fn index_set_case_c_31() {
        let c = DualPairCase::c(3, 1);
        assert_eq!(c.index_set(), vec![(1, 2), (1, 3)]);
        assert_eq!(c.dprime(), 2);
    }

    #[test]
    fn dprime_closed_forms() {
        // |I| matches the closed-form codimension in each family.
        for (p, q, r, s) in [(2u8, 1u8, 1u8, 1u8), (2, 2, 1, 1), (3, 1, 2, 1)] {
            let c = DualPairCase::a(p, q, r, s);
            let expect =
                (r as u32) * (q as u32) + (p as u32) * (s as u32) - (r as u32) * (s as u32);
            assert_eq!(c.dprime(), expect);
        }
        for (n, r) in [(2u8, 1u8), (3, 1), (3, 2)] {
            let c = DualPairCase::b(n, r);
            let expect = (n as u32 * (n as u32 + 1) - (n - r) as u32 * ((n - r) as u32 + 1)) / 2;
            assert_eq!(c.dprime(), expect);
            let c = DualPairCase::c(n, r);
            if c.validate().is_ok() {
                let expect = (n as u32 * (n as u32 - 1)
                    - (n - r) as u32 * ((n - r) as u32).saturating_sub(1))
                    / 2;
                assert_eq!(c.dprime(), expect);
            }
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(DualPairCase::a(1, 1, 2, 0).validate().is_err());
        assert!(DualPairCase::b(2, 3).validate().is_err());
        assert!(DualPairCase::c(2, 2).validate().is_err());
        assert!(DualPairCase::a(2, 1, 1, 1).validate().is_ok());
    }
}
