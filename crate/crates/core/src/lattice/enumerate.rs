//! Exhaustive listing of `B_p` up to a `kappa` bound.

use super::SpElement;
use crate::int::Sign;

/// Every element with `omega = +1`, `kappa <= kappa_max` and the `B_p`
/// inequality, sorted by `(kappa, k, l, m, n, Delta)`.
///
/// At `kappa = 2` there are infinite families (`[[1, l], [0, 1]]` and
/// friends), so when `l m = 0` the free off-diagonal entry is capped at
/// `kappa_max^2` in absolute value. Whenever `l m != 0` both entries are
/// bounded by `|l m p| = |uv - Delta| < kappa_max^2` anyway, so the cap only
/// trims the unipotent tails.
pub fn enumerate_image(p: u32, kappa_max: u64) -> Vec<SpElement> {
    if p < 2 || kappa_max < 2 {
        return Vec::new();
    }
    let pi = p as i64;
    let kmax = kappa_max as i64;
    let cap = kmax * kmax;
    let mut out = Vec::new();
    let mut push = |k: i64, l: i64, m: i64, n: i64, delta: Sign| {
        let e = SpElement { omega: Sign::Plus, k: k.into(), ell: l.into(), m: m.into(), n: n.into(), delta, p };
        debug_assert!(e.satisfies_determinant_condition());
        if e.in_b_p() {
            out.push(e);
        }
    };
    for delta in Sign::BOTH {
        let dv = delta.to_i64();
        for u in -kmax..=kmax {
            if (u - 1).rem_euclid(pi) != 0 {
                continue;
            }
            let rest = kmax - u.abs();
            for v in -rest..=rest {
                if (v - dv).rem_euclid(pi) != 0 {
                    continue;
                }
                let (k, n) = ((u - 1) / pi, (v - dv) / pi);
                let lm = (u * v - dv) / pi;
                if lm == 0 {
                    for t in -cap..=cap {
                        push(k, 0, t, n, delta);
                        if t != 0 {
                            push(k, t, 0, n, delta);
                        }
                    }
                } else {
                    for l in 1..=lm.abs() {
                        if lm % l == 0 {
                            push(k, l, lm / l, n, delta);
                            push(k, -l, -lm / l, n, delta);
                        }
                    }
                }
            }
        }
    }
    let key = |e: &SpElement| (e.kappa(), e.k.clone(), e.ell.clone(), e.m.clone(), e.n.clone(), e.delta);
    out.sort_by_key(key);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{in_a_p, SpElement};
    use crate::matrix::RepMatrix2;
    use num_bigint::BigInt;
    use std::collections::HashSet;

    /// Independent listing: every 2x2 matrix with small entries that has
    /// the `A_p` shape.
    fn brute(p: u32, kappa_max: i64, off: i64) -> HashSet<(i64, i64, i64, i64)> {
        let mut s = HashSet::new();
        for a in -kappa_max..=kappa_max {
            for d in -kappa_max..=kappa_max {
                if a.abs() + d.abs() > kappa_max {
                    continue;
                }
                for b in -off..=off {
                    for c in -off..=off {
                        let m = RepMatrix2::from_i64([[a, b], [c, d]]);
                        if (a - 1).rem_euclid(p as i64) == 0 && in_a_p(&m, p) {
                            let e = SpElement::from_q(&m, p).unwrap();
                            if e.omega == Sign::Plus && e.in_b_p() {
                                s.insert((a, b, c, d));
                            }
                        }
                    }
                }
            }
        }
        s
    }

    fn listed(p: u32, kappa_max: u64, off: i64) -> HashSet<(i64, i64, i64, i64)> {
        let v: Vec<_> = enumerate_image(p, kappa_max)
            .into_iter()
            .map(|e| {
                let a = e.a_block();
                let g = |x: &BigInt| i64::try_from(x).unwrap();
                (g(a.a()), g(a.b()), g(a.c()), g(a.d()))
            })
            .collect();
        let all: HashSet<_> = v.iter().copied().collect();
        assert_eq!(all.len(), v.len(), "duplicates");
        all.into_iter().filter(|t| t.1.abs() <= off && t.2.abs() <= off).collect()
    }

    #[test]
    fn agrees_with_brute_force_on_a_window() {
        for (p, k) in [(2, 6), (3, 7), (5, 9), (4, 6)] {
            assert_eq!(listed(p, k, 15), brute(p, k as i64, 15), "p={p}");
        }
    }

    #[test]
    fn small_examples() {
        assert!(enumerate_image(5, 1).is_empty());
        let two = enumerate_image(2, 2);
        assert!(two.contains(&SpElement::new(2, Sign::Plus, 0, 0, 1, 0, Sign::Plus).unwrap()));
        assert!(enumerate_image(5, 2).iter().all(|e| e.kappa() == BigInt::from(2)));
        let list = enumerate_image(5, 8);
        assert!(list.windows(2).all(|w| w[0].kappa() <= w[1].kappa()));
        assert!(list.iter().all(|e| e.in_b_p() && e.omega == Sign::Plus));
    }

    #[test]
    fn witness_is_excluded_at_five() {
        let w = SpElement::new(5, Sign::Plus, 2, 7, 5, 3, Sign::Plus).unwrap();
        assert!(!enumerate_image(5, 27).contains(&w));
    }
}
