//! Principal ideals of `a1ℕ × a2ℕ`.
//!
//! The ideal generated by `g` is `gℕ + g·S`, so `q` is a member iff
//! `qi = k·gi + gi·si` for one shared `k ≥ 0` and some `si ∈ aiℕ`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericProduct {
    bases: (u64, u64),
}

impl NumericProduct {
    pub fn new(a1: u64, a2: u64) -> Result<Self> {
        if a1 == 0 || a2 == 0 {
            return Err(Error::Domain(format!("bases must be positive, got ({a1},{a2})")));
        }
        Ok(NumericProduct { bases: (a1, a2) })
    }

    pub fn bases(&self) -> (u64, u64) {
        self.bases
    }

    fn check_carrier(&self, what: &str, p: (u64, u64)) -> Result<()> {
        let (a1, a2) = self.bases;
        if !p.0.is_multiple_of(a1) || !p.1.is_multiple_of(a2) {
            return Err(Error::Domain(format!(
                "{what} ({},{}) is not in {a1}N x {a2}N",
                p.0, p.1
            )));
        }
        Ok(())
    }

    /// Whether `q` lies in the principal ideal generated by `g`.
    ///
    /// For `gi > 0` the i-th equation reads `qi = gi·(k + si)`, so `gi | qi`
    /// and `k ≤ qi/gi`; that bound makes the search over `k` finite. Given
    /// `k`, a suitable `si` exists iff `ai` divides `qi/gi − k`. For
    /// `gi = 0` the equation collapses to `qi = 0`.
    pub fn principal_membership(&self, g: (u64, u64), q: (u64, u64)) -> Result<bool> {
        self.check_carrier("generator", g)?;
        self.check_carrier("query", q)?;
        let coords = [(g.0, q.0, self.bases.0), (g.1, q.1, self.bases.1)];
        let mut bound = u64::MAX;
        for &(gi, qi, _) in &coords {
            if gi == 0 {
                if qi != 0 {
                    return Ok(false);
                }
            } else {
                if qi % gi != 0 {
                    return Ok(false);
                }
                bound = bound.min(qi / gi);
            }
        }
        if bound == u64::MAX {
            // g = (0,0) and q = (0,0).
            return Ok(true);
        }
        let fits = |k: u64| {
            coords
                .iter()
                .all(|&(gi, qi, ai)| gi == 0 || (qi / gi - k).is_multiple_of(ai))
        };
        Ok((0..=bound).any(fits))
    }

    /// `(8ℕ × 12ℕ) ∪ ((4 + 8ℕ) × (6 + 12ℕ))`, the ideal generated by
    /// `(4,6)` in `2ℕ × 2ℕ`. Only valid for bases `(2,2)`.
    pub fn closed_form_membership(&self, q: (u64, u64)) -> Result<bool> {
        if self.bases != (2, 2) {
            return Err(Error::Domain("closed form is specific to bases (2,2)".into()));
        }
        self.check_carrier("query", q)?;
        let even_k = q.0.is_multiple_of(8) && q.1.is_multiple_of(12);
        let odd_k = q.0 % 8 == 4 && q.1 % 12 == 6;
        Ok(even_k || odd_k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_n() -> NumericProduct {
        NumericProduct::new(2, 2).unwrap()
    }

    #[test]
    fn generator_4_6() {
        let c = two_n();
        assert!(!c.principal_membership((4, 6), (4, 0)).unwrap());
        assert!(!c.principal_membership((4, 6), (0, 6)).unwrap());
        assert!(c.principal_membership((4, 6), (4, 6)).unwrap());
        assert!(c.principal_membership((4, 6), (8, 12)).unwrap());
        assert!(c.principal_membership((4, 6), (0, 0)).unwrap());
    }

    #[test]
    fn closed_form_values() {
        let c = two_n();
        assert!(c.closed_form_membership((8, 12)).unwrap());
        assert!(c.closed_form_membership((4, 18)).unwrap());
        assert!(!c.closed_form_membership((4, 12)).unwrap());
        assert!(NumericProduct::new(1, 2)
            .unwrap()
            .closed_form_membership((4, 6))
            .is_err());
    }

    #[test]
    fn domain_errors() {
        let c = two_n();
        assert!(matches!(c.principal_membership((3, 6), (4, 0)), Err(Error::Domain(_))));
        assert!(matches!(c.principal_membership((4, 6), (4, 1)), Err(Error::Domain(_))));
        assert!(c.closed_form_membership((3, 0)).is_err());
        assert!(NumericProduct::new(0, 2).is_err());
    }

    #[test]
    fn zero_generator_components() {
        let c = NumericProduct::new(1, 1).unwrap();
        assert!(c.principal_membership((0, 3), (0, 9)).unwrap());
        assert!(!c.principal_membership((0, 3), (1, 9)).unwrap());
        assert!(c.principal_membership((0, 0), (0, 0)).unwrap());
        assert!(!c.principal_membership((0, 0), (0, 1)).unwrap());
    }
}
