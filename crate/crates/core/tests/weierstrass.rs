use dualgraph_core::weierstrass::{curve_degree_helpers, Fp2, Verdict, MAX_SCAN_FIELD};
use dualgraph_core::{analyze_cubic, discriminant, jacobian_scan, Error, WeierstrassCubic};
use proptest::prelude::*;

const PRIMES: [u64; 4] = [5, 7, 11, 13];

fn cubic(p: u64, a: i64, b: i64, c: i64) -> WeierstrassCubic {
    WeierstrassCubic::new(p, a, b, c).unwrap()
}

/// `-(4 b^3 + 27 c^2)` by Horner steps in `i128`, reduced once at the end.
fn horner_discriminant(p: u64, b: i64, c: i64) -> u64 {
    let (b, c) = (i128::from(b), i128::from(c));
    let value = -(((4 * b) * b) * b + (27 * c) * c);
    value.rem_euclid(i128::from(p)) as u64
}

/// Singular points of the projective-free affine model, straight from the
/// definition over `F_p`.
fn singular_points(p: u64, a: u64, b: u64, c: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            let f = (a * y * y + x * x * x + b * x + c) % p;
            let fx = (3 * x * x + b) % p;
            let fy = (2 * a * y) % p;
            if f == 0 && fx == 0 && fy == 0 {
                out.push((x, y));
            }
        }
    }
    out
}

#[test]
fn discriminant_examples() {
    for p in PRIMES {
        assert_eq!(discriminant(&cubic(p, 1, 0, 0)), 0);
        assert_eq!(discriminant(&cubic(p, 1, -3, 2)), 0);
    }
    assert_eq!(discriminant(&cubic(7, 1, 1, 1)), 4);
}

#[test]
fn discriminant_two_ways() {
    for p in PRIMES {
        let pi = p as i64;
        for b in -pi..pi {
            for c in -pi..pi {
                assert_eq!(
                    discriminant(&cubic(p, 1, b, c)),
                    horner_discriminant(p, b, c),
                    "p={p} b={b} c={c}"
                );
            }
        }
    }
}

#[test]
fn verdict_examples() {
    assert_eq!(analyze_cubic(&cubic(7, 1, 1, 1)).verdict, Verdict::Smooth);
    assert_eq!(
        analyze_cubic(&cubic(11, 1, -3, 2)).verdict,
        Verdict::Node { point: (1, 0) }
    );
    assert_eq!(
        analyze_cubic(&cubic(5, 1, 0, 0)).verdict,
        Verdict::Cusp { point: (0, 0) }
    );
}

#[test]
fn exhaustive_against_definition() {
    for p in PRIMES {
        for a in 1..p {
            for b in 0..p {
                for c in 0..p {
                    let w = cubic(p, a as i64, b as i64, c as i64);
                    let direct = singular_points(p, a, b, c);
                    let claimed = match analyze_cubic(&w).verdict {
                        Verdict::Smooth => vec![],
                        Verdict::Node { point } => vec![point],
                        Verdict::Cusp { point } => {
                            assert_eq!((b, c), (0, 0));
                            vec![point]
                        }
                    };
                    assert_eq!(claimed, direct, "p={p} a={a} b={b} c={c}");
                    let scan: Vec<(u64, u64)> = jacobian_scan(&w, 1)
                        .unwrap()
                        .into_iter()
                        .map(|(x, y)| (x.as_base().unwrap(), y.as_base().unwrap()))
                        .collect();
                    assert_eq!(scan, direct);
                }
            }
        }
    }
}

#[test]
fn smooth_stays_smooth_over_the_quadratic_extension() {
    for p in PRIMES {
        for b in 0..p as i64 {
            for c in 0..p as i64 {
                let w = cubic(p, 1, b, c);
                if analyze_cubic(&w).verdict == Verdict::Smooth {
                    assert!(
                        jacobian_scan(&w, 2).unwrap().is_empty(),
                        "p={p} b={b} c={c}"
                    );
                }
            }
        }
    }
}

#[test]
fn leading_coefficient_does_not_move_the_singularity() {
    for p in PRIMES {
        for b in 0..p as i64 {
            for c in 0..p as i64 {
                let base = analyze_cubic(&cubic(p, 1, b, c));
                for a in 2..p as i64 {
                    assert_eq!(analyze_cubic(&cubic(p, a, b, c)), base, "p={p} a={a}");
                }
            }
        }
    }
}

#[test]
fn scan_limits() {
    let side = (MAX_SCAN_FIELD as f64).sqrt() as u64;
    let below = (2..=side)
        .rev()
        .find(|&n| (2..n).all(|d| n % d != 0))
        .unwrap();
    assert!(jacobian_scan(&cubic(below, 1, 0, 0), 2).is_ok());
    let above = (side + 1..).find(|&n| (2..n).all(|d| n % d != 0)).unwrap();
    assert_eq!(
        jacobian_scan(&cubic(above, 1, 0, 0), 2),
        Err(Error::OversizedField(above * above))
    );
    assert!(jacobian_scan(&cubic(5, 1, 0, 0), 0).is_err());
}

#[test]
fn rejects_bad_fields() {
    for p in [0, 1, 2, 3, 4, 9, 25] {
        assert!(WeierstrassCubic::new(p, 1, 0, 0).is_err(), "p={p}");
    }
    assert!(WeierstrassCubic::new(11, 22, 0, 0).is_err());
    let w = cubic(7, -1, -8, 15);
    assert_eq!((w.a, w.b, w.c), (6, 6, 1));
}

#[test]
fn extension_elements_print() {
    assert_eq!(Fp2 { u: 3, v: 0 }.to_string(), "3");
    assert_eq!(Fp2 { u: 0, v: 2 }.to_string(), "2t");
    assert_eq!(Fp2 { u: 1, v: 4 }.to_string(), "1+4t");
}

#[test]
fn degree_helpers() {
    let d = curve_degree_helpers(1, 0);
    assert_eq!((d.omega_degree, d.chi_o), (-2, 1));
    let d = curve_degree_helpers(1, 1);
    assert_eq!((d.omega_degree, d.chi_o), (0, 0));
    let d = curve_degree_helpers(2, 0);
    assert_eq!((d.omega_degree, d.chi_o), (-4, 2));
}

proptest! {
    #[test]
    fn large_primes_locate_the_node(k in 1i64..1_000_000) {
        // x^3 - 3k^2 x + 2k^3 = (x - k)^2 (x + 2k)
        let p = 1_000_000_007u64;
        let w = cubic(p, 1, -3 * k * k, 2 * k * k * k);
        prop_assert_eq!(analyze_cubic(&w).verdict, Verdict::Node { point: (k as u64, 0) });
    }

    #[test]
    fn degree_helpers_are_linear_in_r(r in 1u32..100, g in 0u32..100) {
        let one = curve_degree_helpers(1, g);
        let d = curve_degree_helpers(r, g);
        prop_assert_eq!(d.omega_degree, i64::from(r) * one.omega_degree);
        prop_assert_eq!(d.chi_o, i64::from(r) * one.chi_o);
        prop_assert_eq!(d.omega_degree, -2 * d.chi_o);
    }
}
