use num_bigint::BigUint;
use proptest::prelude::*;
use threeweight::charsums::{weil_sum_direct, WeilSumQuery, WeilSweep};
use threeweight::codes::{dual_summary, pless_check, BinaryVector, LinearCode};
use threeweight::combinatorics::binomial;
use threeweight::constructions::construct_d_rho;
use threeweight::designs::{verify_t_design, Design};
use threeweight::field::{irreducible_polynomials, FieldContext, FieldElement};

fn random_code(n: usize, rows: &[u64]) -> Option<LinearCode> {
    let rows = rows
        .iter()
        .map(|r| BinaryVector::from_bits((0..n).map(|i| r >> i & 1 == 1)))
        .collect();
    LinearCode::from_spanning_rows(n, rows).ok()
}

fn code_strategy() -> impl Strategy<Value = LinearCode> {
    (2usize..=14, prop::collection::vec(any::<u64>(), 1..=7))
        .prop_filter_map("rows span the zero code", |(n, rows)| random_code(n, &rows))
}

fn field_strategy() -> impl Strategy<Value = FieldContext> {
    (2u32..=10)
        .prop_flat_map(|m| {
            let moduli: Vec<u64> = irreducible_polynomials(m).collect();
            prop::sample::select(moduli).prop_map(move |p| (m, p))
        })
        .prop_map(|(m, p)| FieldContext::new(m, Some(p)).expect("irreducible"))
}

/// Sums `(-1)^Tr(a x^(2^u+1) + b x)` with nothing but field multiplication.
fn naive_weil(ctx: &FieldContext, u: u32, a: FieldElement, b: FieldElement) -> i64 {
    ctx.elements()
        .map(|x| {
            let q = ctx.mul(ctx.frobenius(x, u), x);
            let arg = FieldElement::from_bits(ctx.mul(a, q).bits() ^ ctx.mul(b, x).bits());
            if ctx.trace(arg) == 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(ctx in field_strategy(), x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let mask = (ctx.order() - 1) as u32;
        let (x, y, z) = (FieldElement::from_bits(x & mask), FieldElement::from_bits(y & mask), FieldElement::from_bits(z & mask));
        prop_assert_eq!(ctx.mul(ctx.mul(x, y), z), ctx.mul(x, ctx.mul(y, z)));
        let yz = FieldElement::from_bits(y.bits() ^ z.bits());
        prop_assert_eq!(ctx.mul(x, yz).bits(), ctx.mul(x, y).bits() ^ ctx.mul(x, z).bits());
        prop_assert_eq!(ctx.trace(yz), ctx.trace(y) ^ ctx.trace(z));
        prop_assert_eq!(ctx.trace(ctx.square(x)), ctx.trace(x));
        prop_assert_eq!(ctx.pow(x, ctx.order()), x);
        if let Some(inv) = ctx.inv(x) {
            prop_assert_eq!(ctx.mul(x, inv), FieldElement::ONE);
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn macwilliams_is_an_involution(code in code_strategy()) {
        let dist = code.weight_distribution().unwrap();
        let back = dist.macwilliams_dual().unwrap().macwilliams_dual().unwrap();
        prop_assert_eq!(&back, dist);
    }

    #[test]
    fn transform_matches_enumerated_dual(code in code_strategy()) {
        prop_assume!(code.k() < code.n());
        let summary = dual_summary(&code).unwrap();
        let explicit = code.dual().unwrap();
        prop_assert_eq!(explicit.weight_distribution().unwrap(), &summary.distribution);
        prop_assert_eq!(summary.direct_agrees, Some(true));
        for row in explicit.rows() {
            for c in code.rows() {
                prop_assert!(!row.dot(c));
            }
        }
    }

    #[test]
    fn pless_moments_hold(code in code_strategy()) {
        let summary = dual_summary(&code).unwrap();
        prop_assert!(pless_check(code.weight_distribution().unwrap(), &summary.distribution).passed());
    }

    #[test]
    fn distribution_sums_to_code_size(code in code_strategy()) {
        let dist = code.weight_distribution().unwrap();
        let total: BigUint = dist.counts().iter().sum();
        prop_assert_eq!(total, BigUint::from(1u64) << code.k());
        let full = *dist.count(code.n()) == BigUint::from(1u32);
        prop_assert_eq!(dist.is_palindromic(), full);
    }

    #[test]
    fn weil_sums_agree_with_naive_evaluation(m in 2u32..=8, u_seed in 1u32..8, a in any::<u32>(), b in any::<u32>()) {
        let ctx = FieldContext::new(m, None).unwrap();
        let u = u_seed % m + 1;
        let mask = (ctx.order() - 1) as u32;
        let (a, b) = (FieldElement::from_bits(a & mask), FieldElement::from_bits(b & mask));
        let naive = naive_weil(&ctx, u, a, b);
        prop_assert_eq!(weil_sum_direct(&WeilSumQuery::new(&ctx, u, a, b).unwrap()), naive);
        prop_assert_eq!(WeilSweep::new(&ctx, u).unwrap().sum(a, b), naive);
    }

    #[test]
    fn design_counts_match_pair_counting(v in 4usize..=9, r in 2usize..=4, picks in prop::collection::vec(any::<u32>(), 2..=12)) {
        prop_assume!(r < v);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for p in picks {
            let block: Vec<usize> = (0..v).filter(|i| p >> i & 1 == 1).collect();
            if block.len() == r && !blocks.contains(&block) {
                blocks.push(block);
            }
        }
        prop_assume!(blocks.len() >= 2);
        let one_based = blocks.iter().map(|b| b.iter().map(|x| x + 1).collect()).collect();
        let design = Design::new(v, r, one_based).unwrap();
        let verdict = verify_t_design(&design, 2).unwrap();
        let mut counts = vec![0u64; v * v];
        for b in &blocks {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    counts[x * v + y] += 1;
                }
            }
        }
        let index: Vec<(usize, usize)> = (0..v).flat_map(|x| (x + 1..v).map(move |y| (x, y))).collect();
        let pairs: Vec<u64> = index.iter().map(|&(x, y)| counts[x * v + y]).collect();
        let uniform = pairs.iter().all(|&c| c == pairs[0]);
        prop_assert_eq!(verdict.is_design, uniform);
        if uniform {
            prop_assert_eq!(verdict.lambda, Some(pairs[0]));
            let lhs = BigUint::from(blocks.len()) * binomial(r, 2);
            prop_assert_eq!(lhs, BigUint::from(pairs[0]) * binomial(v, 2));
        } else if verdict.non_integral {
            let lhs = BigUint::from(blocks.len()) * binomial(r, 2);
            prop_assert!(lhs % binomial(v, 2) != BigUint::from(0u32));
        } else {
            // the witness is the first pair, in lex order, with the fewest blocks
            let low = *pairs.iter().min().unwrap();
            let (x, y) = index[pairs.iter().position(|&c| c == low).unwrap()];
            let w = verdict.witness.unwrap();
            prop_assert_eq!(w.count, low);
            prop_assert_eq!(w.subset, vec![x + 1, y + 1]);
        }
    }
}

#[test]
fn enumerators_do_not_depend_on_the_modulus() {
    for m in [5u32, 7] {
        for rho in [0, 1] {
            let reference = {
                let ctx = FieldContext::new(m, None).unwrap();
                construct_d_rho(&ctx, 1, rho).unwrap().code.weight_distribution().unwrap().clone()
            };
            for p in irreducible_polynomials(m) {
                let ctx = FieldContext::new(m, Some(p)).unwrap();
                let code = construct_d_rho(&ctx, 1, rho).unwrap().code;
                assert_eq!(code.weight_distribution().unwrap(), &reference, "m={m} rho={rho} modulus {p:#x}");
            }
        }
    }
}
