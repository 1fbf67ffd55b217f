//! Plane cubics `a y^2 + x^3 + b x + c = 0` over `F_p`, `p >= 5`.

use serde::Serialize;

use crate::{Error, Result};

/// Largest field scanned by [`jacobian_scan`].
pub const MAX_SCAN_FIELD: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeierstrassCubic {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

impl WeierstrassCubic {
    /// Reduces the coefficients mod `p`. Requires `p` prime, `p >= 5` and
    /// `a != 0 mod p`.
    pub fn new(p: u64, a: i64, b: i64, c: i64) -> Result<Self> {
        if p < 5 || p > i64::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidCurve(format!("p = {p} must be a prime >= 5")));
        }
        let a = reduce(a, p);
        if a == 0 {
            return Err(Error::InvalidCurve(format!("a must be nonzero mod {p}")));
        }
        Ok(Self {
            p,
            a,
            b: reduce(b, p),
            c: reduce(c, p),
        })
    }

    fn f(&self) -> Fp {
        Fp { p: self.p }
    }
}

/// Arithmetic in `F_p`.
#[derive(Debug, Clone, Copy)]
struct Fp {
    p: u64,
}

impl Fp {
    fn add(self, x: u64, y: u64) -> u64 {
        ((u128::from(x) + u128::from(y)) % u128::from(self.p)) as u64
    }
    fn sub(self, x: u64, y: u64) -> u64 {
        self.add(x, self.p - y % self.p)
    }
    fn mul(self, x: u64, y: u64) -> u64 {
        (u128::from(x) * u128::from(y) % u128::from(self.p)) as u64
    }
    fn pow(self, mut x: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }
    fn inv(self, x: u64) -> u64 {
        debug_assert!(!x.is_multiple_of(self.p));
        self.pow(x, self.p - 2)
    }
    fn of(self, x: i64) -> u64 {
        reduce(x, self.p)
    }
}

/// `-4 b^3 - 27 c^2 mod p`.
pub fn discriminant(w: &WeierstrassCubic) -> u64 {
    let f = w.f();
    let b3 = f.mul(f.mul(w.b, w.b), w.b);
    let c2 = f.mul(w.c, w.c);
    f.sub(f.mul(f.of(-4), b3), f.mul(f.of(27), c2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Verdict {
    Smooth,
    /// Double, not triple, root of the cubic in `x`.
    Node {
        point: (u64, u64),
    },
    /// Triple root: `b = c = 0`.
    Cusp {
        point: (u64, u64),
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub discriminant: u64,
    pub verdict: Verdict,
}

/// Smooth iff the discriminant is nonzero; otherwise the singular point is
/// `(-3c / 2b, 0)` when `b != 0` and `(0, 0)` when `b = 0`.
pub fn analyze_cubic(w: &WeierstrassCubic) -> CurveReport {
    let f = w.f();
    let discriminant = discriminant(w);
    let verdict = if discriminant != 0 {
        Verdict::Smooth
    } else if w.b != 0 {
        let x0 = f.mul(f.mul(f.of(-3), w.c), f.inv(f.mul(2, w.b)));
        Verdict::Node { point: (x0, 0) }
    } else {
        debug_assert_eq!(w.c, 0);
        Verdict::Cusp { point: (0, 0) }
    };
    CurveReport {
        discriminant,
        verdict,
    }
}

/// Element `u + v t` of `F_p[t] / (t^2 - n)` with `n` a non-residue; in
/// degree 1 scans `v` is always 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fp2 {
    pub u: u64,
    pub v: u64,
}

impl Fp2 {
    pub fn base(u: u64) -> Self {
        Self { u, v: 0 }
    }

    /// The element when it lies in `F_p`.
    pub fn as_base(self) -> Option<u64> {
        (self.v == 0).then_some(self.u)
    }
}

impl std::fmt::Display for Fp2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.u, self.v) {
            (u, 0) => write!(f, "{u}"),
            (0, v) => write!(f, "{v}t"),
            (u, v) => write!(f, "{u}+{v}t"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Ext {
    f: Fp,
    n: u64,
}

impl Ext {
    fn add(self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 {
            u: self.f.add(x.u, y.u),
            v: self.f.add(x.v, y.v),
        }
    }
    fn mul(self, x: Fp2, y: Fp2) -> Fp2 {
        let f = self.f;
        Fp2 {
            u: f.add(f.mul(x.u, y.u), f.mul(self.n, f.mul(x.v, y.v))),
            v: f.add(f.mul(x.u, y.v), f.mul(x.v, y.u)),
        }
    }
    fn scale(self, k: u64, x: Fp2) -> Fp2 {
        self.mul(Fp2::base(k), x)
    }
}

fn non_residue(f: Fp) -> u64 {
    (2..f.p)
        .find(|&n| f.pow(n, (f.p - 1) / 2) == f.p - 1)
        .expect("odd primes have non-residues")
}

/// Brute-force Jacobian criterion: every `(x, y)` over `F_{p^k}`
/// (`k` in {1, 2}) with `f = df/dx = df/dy = 0`, sorted.
pub fn jacobian_scan(w: &WeierstrassCubic, ext_degree: u32) -> Result<Vec<(Fp2, Fp2)>> {
    if !(1..=2).contains(&ext_degree) {
        return Err(Error::InvalidCurve(format!(
            "extension degree must be 1 or 2, got {ext_degree}"
        )));
    }
    let size = w.p.checked_pow(ext_degree).unwrap_or(u64::MAX);
    if size > MAX_SCAN_FIELD {
        return Err(Error::OversizedField(size));
    }
    let f = w.f();
    let ext = Ext {
        f,
        n: if ext_degree == 2 { non_residue(f) } else { 0 },
    };
    let elements: Vec<Fp2> = (0..w.p)
        .flat_map(|u| {
            let vs = if ext_degree == 2 { w.p } else { 1 };
            (0..vs).map(move |v| Fp2 { u, v })
        })
        .collect();
    let zero = Fp2::base(0);
    let (a, b, c) = (Fp2::base(w.a), Fp2::base(w.b), Fp2::base(w.c));

    let ys: Vec<Fp2> = elements
        .iter()
        .copied()
        .filter(|&y| ext.scale(2, ext.mul(a, y)) == zero)
        .collect();
    let mut points = Vec::new();
    for &y in &ys {
        let ay2 = ext.mul(a, ext.mul(y, y));
        for &x in &elements {
            let x2 = ext.mul(x, x);
            let dx = ext.add(ext.scale(3, x2), b);
            if dx != zero {
                continue;
            }
            let value = ext.add(ext.add(ay2, ext.mul(x2, x)), ext.add(ext.mul(b, x), c));
            if value == zero {
                points.push((x, y));
            }
        }
    }
    points.sort();
    Ok(points)
}

/// `(r, g)` of a curve over its field of constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub r: u32,
    pub g: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeHelpers {
    pub omega_degree: i64,
    pub chi_o: i64,
}

impl CurveInvariants {
    /// Degrees relative to the residue field: `deg omega = r (2g - 2)`,
    /// `chi(O) = r (1 - g)`.
    pub fn degrees(&self) -> DegreeHelpers {
        curve_degree_helpers(self.r, self.g)
    }
}

pub fn curve_degree_helpers(r: u32, g: u32) -> DegreeHelpers {
    let (r, g) = (i64::from(r), i64::from(g));
    DegreeHelpers {
        omega_degree: r * (2 * g - 2),
        chi_o: r * (1 - g),
    }
}
