//! Canonical degrees, the boundary `Delta_Y` and the numerical class.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::solve_negative_definite;
use crate::graph::{intersection_matrix, DualGraph};
use crate::{Error, Result};

/// Numerical class of a dual graph, decided from the `Delta_Y` coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NumericClass {
    /// Every coefficient is `< 1`.
    Klt,
    /// Every coefficient is `<= 1` and at least one equals 1.
    /// `delta_equals_e` holds when all of them equal 1.
    LcNotKlt { delta_equals_e: bool },
    /// Some coefficient exceeds 1.
    NotLc,
}

impl NumericClass {
    /// Short tag used in JSON output: `klt`, `lc` or `not_lc`.
    pub fn tag(self) -> &'static str {
        match self {
            Self::Klt => "klt",
            Self::LcNotKlt { .. } => "lc",
            Self::NotLc => "not_lc",
        }
    }

    pub fn delta_equals_e(self) -> bool {
        matches!(
            self,
            Self::LcNotKlt {
                delta_equals_e: true
            }
        )
    }
}

impl std::fmt::Display for NumericClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Klt => f.write_str("klt"),
            Self::LcNotKlt {
                delta_equals_e: true,
            } => f.write_str("lc (not klt), Δ_Y = E"),
            Self::LcNotKlt {
                delta_equals_e: false,
            } => f.write_str("lc (not klt), Δ_Y ≠ E"),
            Self::NotLc => f.write_str("not lc"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyResult {
    /// `(K_Y . E_i)`.
    pub canonical_degrees: Vec<i64>,
    /// Coefficients of `Delta_Y`.
    pub delta: Vec<BigRational>,
    /// `a_{E_i} = -delta_i`.
    pub discrepancies: Vec<BigRational>,
    pub class: NumericClass,
}

/// `(K_Y . E_i) = r_i (2 g_i - 2) + a_i`, from adjunction.
pub fn canonical_degrees(g: &DualGraph) -> Vec<i64> {
    g.vertices()
        .iter()
        .map(|v| {
            let (r, genus, a) = (i64::from(v.r), i64::from(v.g), i64::from(v.a));
            r * (2 * genus - 2) + a
        })
        .collect()
}

/// Solves `(Delta_Y . E_i) = -(K_Y . E_i)` for the coefficients of `Delta_Y`.
pub fn delta_coefficients(g: &DualGraph) -> Result<Vec<BigRational>> {
    let b: Vec<i64> = canonical_degrees(g).into_iter().map(|k| -k).collect();
    solve_negative_definite(&intersection_matrix(g), &b).ok_or(Error::NotADualGraph)
}

pub fn classify_numerical(g: &DualGraph) -> Result<DiscrepancyResult> {
    let canonical_degrees = canonical_degrees(g);
    let b: Vec<i64> = canonical_degrees.iter().map(|k| -k).collect();
    let delta = solve_negative_definite(&intersection_matrix(g), &b).ok_or(Error::NotADualGraph)?;
    let class = class_of(&delta);
    let discrepancies = delta.iter().map(|d| -d).collect();
    Ok(DiscrepancyResult {
        canonical_degrees,
        delta,
        discrepancies,
        class,
    })
}

/// Class from the coefficient vector by exact comparison with 1.
pub fn class_of(delta: &[BigRational]) -> NumericClass {
    let one = BigRational::one();
    if delta.iter().any(|d| *d > one) {
        NumericClass::NotLc
    } else if delta.contains(&one) {
        NumericClass::LcNotKlt {
            delta_equals_e: delta.iter().all(|d| *d == one),
        }
    } else {
        NumericClass::Klt
    }
}

impl DiscrepancyResult {
    /// True when every coefficient vanishes.
    pub fn is_trivial(&self) -> bool {
        self.delta.iter().all(Zero::is_zero)
    }
}
