use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use eisenlab::catalog::{length_measure, Compact, CubicEquation};
use eisenlab::character::{
    char_primary, char_prime, check_general_reciprocity, check_prime_reciprocity,
};
use eisenlab::factor::factor;
use eisenlab::factor::rational_valuation;
use eisenlab::proof::reciprocity::primary_primes;
use eisenlab::proof::SevenAdicSplit;
use eisenlab::search::{self, search_compact, SearchOptions};
use eisenlab::{CharValue, EisensteinInt};

fn e(a: i64, b: i64) -> EisensteinInt {
    EisensteinInt::new(a, b)
}

fn small_primes() -> Vec<EisensteinInt> {
    primary_primes(2000)
}

fn element(r: i64) -> impl Strategy<Value = EisensteinInt> {
    (-r..=r, -r..=r).prop_map(|(a, b)| e(a, b))
}

fn nonzero(r: i64) -> impl Strategy<Value = EisensteinInt> {
    element(r).prop_filter("nonzero", |x| !x.is_zero())
}

fn coprime_to_three(r: i64) -> impl Strategy<Value = EisensteinInt> {
    element(r).prop_filter("coprime to 3", |x| !x.is_zero() && x.is_coprime_to_three())
}

/// A polynomial as exponent vectors over `n` variables mapped to
/// coefficients, with at least one cubic term.
#[derive(Clone, Debug)]
struct Poly {
    n: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl Poly {
    fn render(&self) -> String {
        let mut out = String::new();
        for (exps, &c) in &self.terms {
            out.push_str(if c < 0 { "-" } else { "+" });
            let mut factors = vec![c.unsigned_abs().to_string()];
            for (v, &k) in exps.iter().enumerate() {
                if k > 0 {
                    factors.push(format!("x{}^{k}", v + 1));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    fn equation(&self) -> CubicEquation {
        self.render().parse().expect("rendered polynomial parses")
    }

    fn compact(&self) -> Compact {
        Compact::from_equation(&self.equation()).expect("compact")
    }

    /// Applies `xᵢ → ±x_{perm[i]}` and an optional global negation.
    fn transform(&self, perm: &[usize], flips: &[bool], negate: bool) -> Poly {
        let mut terms = BTreeMap::new();
        for (exps, &c) in &self.terms {
            let mut moved = vec![0; self.n];
            let mut c = if negate { -c } else { c };
            for (v, &k) in exps.iter().enumerate() {
                moved[perm[v]] = k;
                if flips[v] && k % 2 == 1 {
                    c = -c;
                }
            }
            terms.insert(moved, c);
        }
        Poly { n: self.n, terms }
    }
}

fn monomial(n: usize) -> impl Strategy<Value = Vec<u32>> {
    (0..=3u32, prop::collection::vec(0..n, 3)).prop_map(move |(d, slots)| {
        let mut exps = vec![0; n];
        for &v in &slots[..d as usize] {
            exps[v] += 1;
        }
        exps
    })
}

fn poly(max_vars: usize, coef: i64) -> impl Strategy<Value = Poly> {
    (1..=max_vars).prop_flat_map(move |n| {
        let cubic = prop::collection::vec(0..n, 3).prop_map(move |slots| {
            let mut exps = vec![0; n];
            for v in slots {
                exps[v] += 1;
            }
            exps
        });
        let coeff = (1..=coef, any::<bool>()).prop_map(|(c, neg)| if neg { -c } else { c });
        (
            cubic,
            coeff.clone(),
            prop::collection::vec((monomial(n), coeff), 0..4),
        )
            .prop_map(move |(top, c, rest)| {
                let mut terms = BTreeMap::new();
                for (m, k) in rest {
                    terms.insert(m, k);
                }
                terms.insert(top, c);
                Poly { n, terms }
            })
    })
}

fn symmetry(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<bool>, bool)> {
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), n),
        any::<bool>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_is_multiplicative(x in element(1 << 20), y in element(1 << 20)) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn division_leaves_smaller_remainder(x in element(1 << 30), d in nonzero(1 << 15)) {
        let (q, r) = x.divmod(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, x);
        prop_assert!(r.norm() < d.norm());
    }

    #[test]
    fn gcd_divides_both(x in nonzero(5000), y in nonzero(5000), k in nonzero(50)) {
        let (x, y) = (&x * &k, &y * &k);
        let g = x.gcd(&y).unwrap();
        prop_assert!(g.divides(&x) && g.divides(&y) && k.divides(&g));
    }

    #[test]
    fn primary_associate_is_unique(x in coprime_to_three(1 << 20)) {
        let p = x.primary_associate().unwrap();
        prop_assert!(p.is_primary());
        let primary: Vec<_> = x.associates().into_iter().filter(|a| a.is_primary()).collect();
        prop_assert_eq!(primary, vec![p]);
    }

    #[test]
    fn factorization_recomposes(x in nonzero(1 << 20)) {
        let f = factor(&x).unwrap();
        prop_assert_eq!(f.recompose(), x);
        for (p, _) in &f.factors {
            prop_assert!(p.is_primary());
        }
    }

    #[test]
    fn character_is_multiplicative(i in any::<prop::sample::Index>(), x in element(1 << 20), y in element(1 << 20)) {
        let primes = small_primes();
        let pi = &primes[i.index(primes.len())];
        let lhs = char_prime(&(&x * &y), pi).unwrap();
        prop_assert_eq!(lhs, char_prime(&x, pi).unwrap() * char_prime(&y, pi).unwrap());
    }

    #[test]
    fn character_depends_on_residue(i in any::<prop::sample::Index>(), x in element(1 << 20), k in element(1 << 10)) {
        let primes = small_primes();
        let pi = &primes[i.index(primes.len())];
        let y = &x + &(&k * pi);
        prop_assert_eq!(char_prime(&x, pi).unwrap(), char_prime(&y, pi).unwrap());
    }

    #[test]
    fn character_of_minus_one_is_trivial(i in any::<prop::sample::Index>()) {
        let primes = small_primes();
        prop_assert_eq!(char_prime(&e(-1, 0), &primes[i.index(primes.len())]).unwrap(), CharValue::One);
    }

    #[test]
    fn cubes_have_trivial_character(x in nonzero(1000), eta in coprime_to_three(3000)) {
        let eta = eta.primary_associate().unwrap();
        prop_assume!(x.is_coprime(&eta).unwrap());
        prop_assert_eq!(char_primary(&x.pow(3), &eta).unwrap(), CharValue::One);
    }

    #[test]
    fn prime_reciprocity(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let primes = small_primes();
        let (p, q) = (&primes[i.index(primes.len())], &primes[j.index(primes.len())]);
        prop_assume!(p.norm() != q.norm());
        prop_assert!(check_prime_reciprocity(p, q).unwrap().equal);
    }

    #[test]
    fn general_reciprocity(x in coprime_to_three(1000), y in coprime_to_three(1000)) {
        let (x, y) = (x.primary_associate().unwrap(), y.primary_associate().unwrap());
        let r = check_general_reciprocity(&x, &y).unwrap();
        prop_assert!(r.equal);
        prop_assert_eq!(r.lhs == CharValue::Zero, !x.is_coprime(&y).unwrap());
    }

    #[test]
    fn trace_norm_identity(z in -(1i64 << 30)..(1i64 << 30)) {
        let alpha = e(1 + z, 2 * z);
        prop_assert_eq!(alpha.norm(), BigInt::from(3) * BigInt::from(z) * BigInt::from(z) + 1);
        if z % 2 == 0 {
            prop_assert!(alpha.congruent_mod(&e(1, 0), &e(2, 0)).unwrap());
        }
    }

    #[test]
    fn seven_adic_valuation(x in -(1i64 << 20)..(1i64 << 20), y in -(1i64 << 20)..(1i64 << 20), u in 0u32..4, v in 0u32..4) {
        prop_assume!(x != 0 && y != 0);
        let x = BigInt::from(x) * BigInt::from(7).pow(u);
        let y = BigInt::from(y) * BigInt::from(7).pow(v);
        let s = SevenAdicSplit::new(&x, &y).unwrap();
        let f: BigInt = 7 * &x * &x * &x + 2 * &y * &y * &y;
        prop_assert_eq!(s.form_valuation(), rational_valuation(&f, &BigUint::from(7u32)));
        prop_assert!((1..7).contains(&s.unit_part_mod7()));
    }

    #[test]
    fn canonical_form_is_idempotent(p in poly(5, 9)) {
        let c = p.compact().canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        let back = Compact::from_equation(&c.to_string().parse().unwrap()).unwrap().canonical();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn canonical_form_is_orbit_invariant((p, s) in poly(5, 9).prop_flat_map(|p| { let n = p.n; (Just(p), symmetry(n)) })) {
        let (perm, flips, negate) = s;
        let q = p.transform(&perm, &flips, negate);
        prop_assert_eq!(p.compact().canonical(), q.compact().canonical());
        prop_assert_eq!(length_measure(&p.equation()), length_measure(&q.equation()));
    }

    #[test]
    fn sieve_does_not_change_solutions(p in poly(3, 5)) {
        let c = p.compact();
        let plain = search_compact(&c, &SearchOptions::new(6)).unwrap();
        let sieved = search_compact(&c, &SearchOptions::new(6).sieve(&[2, 3, 4, 5, 7, 9])).unwrap();
        let exhaustive = search_compact(&c, &SearchOptions::new(6).strategy(search::Strategy::Exhaustive)).unwrap();
        prop_assert_eq!(&plain.solutions, &sieved.solutions);
        prop_assert_eq!(&plain.solutions, &exhaustive.solutions);
        for s in &plain.solutions {
            prop_assert_eq!(c.eval_i128(s), Some(0));
        }
    }
}
