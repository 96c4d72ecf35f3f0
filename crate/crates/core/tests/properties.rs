use apolarity::constructions::{points_parameters, specimen_module, target_h_vector};
use apolarity::lefschetz::{multiplication_rank, wlp_probe};
use apolarity::monomial::{binomial, monomials_of_degree};
use apolarity::{contract, FieldSpec, InverseSystem, Matrix, Polynomial, RingContext, Scalar};
use proptest::prelude::*;

fn ctx(field: FieldSpec) -> RingContext {
    RingContext::new(3, field).unwrap()
}

/// Homogeneous form of degree `d` with small integer coefficients, as
/// (coefficient, monomial index) pairs.
fn form_terms(max_degree: u32) -> impl Strategy<Value = (u32, Vec<(i64, usize)>)> {
    (0..=max_degree).prop_flat_map(|d| {
        let n = monomials_of_degree(3, d).len();
        (Just(d), prop::collection::vec((-4i64..=4, 0..n), 1..5))
    })
}

fn build(field: FieldSpec, (d, terms): &(u32, Vec<(i64, usize)>)) -> Polynomial {
    let monos = monomials_of_degree(3, *d);
    let c = ctx(field);
    Polynomial::from_terms(c, terms.iter().map(|&(k, i)| (monos[i].clone(), field.from_i64(k)))).unwrap()
}

fn nonzero_form(max_degree: u32) -> impl Strategy<Value = (u32, Vec<(i64, usize)>)> {
    form_terms(max_degree).prop_filter("nonzero", |t| !build(FieldSpec::Rationals, t).is_zero())
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn variables_commute(p in form_terms(6), i in 0usize..3, j in 0usize..3) {
        let f = FieldSpec::Rationals;
        let p = build(f, &p);
        let xi = Polynomial::var(ctx(f), i).unwrap();
        let xj = Polynomial::var(ctx(f), j).unwrap();
        let a = contract(&xi, &contract(&xj, &p).unwrap()).unwrap();
        let b = contract(&xj, &contract(&xi, &p).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn contraction_composes(t1 in form_terms(2), t2 in form_terms(2), p in form_terms(6)) {
        let f = FieldSpec::Prime(apolarity::DEFAULT_PRIME);
        let (t1, t2, p) = (build(f, &t1), build(f, &t2), build(f, &p));
        let lhs = contract(&(&t1 * &t2), &p).unwrap();
        let rhs = contract(&t1, &contract(&t2, &p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_bilinear(t1 in form_terms(2), t2 in form_terms(2), p in form_terms(5), q in form_terms(5)) {
        let f = FieldSpec::Rationals;
        let (t1, t2, p, q) = (build(f, &t1), build(f, &t2), build(f, &p), build(f, &q));
        prop_assert_eq!(
            contract(&t1, &(&p + &q)).unwrap(),
            &contract(&t1, &p).unwrap() + &contract(&t1, &q).unwrap()
        );
        prop_assert_eq!(
            contract(&(&t1 + &t2), &p).unwrap(),
            &contract(&t1, &p).unwrap() + &contract(&t2, &p).unwrap()
        );
    }

    #[test]
    fn rank_properties(rows in small_matrix()) {
        let q = Matrix::from_i64_rows(FieldSpec::Rationals, &rows).unwrap();
        let p7 = Matrix::from_i64_rows(FieldSpec::Prime(7), &rows).unwrap();
        prop_assert_eq!(q.rank(), q.transpose().rank());
        prop_assert_eq!(q.rank(), q.row_echelon().rank());
        prop_assert!(q.rank() >= p7.rank());
        for m in [&q, &p7] {
            let ker = m.kernel_basis();
            prop_assert_eq!(ker.len(), m.num_cols() - m.rank());
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|x| m.field().is_zero(x)));
            }
        }
    }

    #[test]
    fn degree_lists_descend(r in 1usize..5, d in 0u32..7) {
        let monos = monomials_of_degree(r, d);
        prop_assert_eq!(monos.len() as u128, binomial(u64::from(d) + r as u64 - 1, r as u64 - 1));
        prop_assert!(monos.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn hilbert_function_vs_annihilator(gens in prop::collection::vec(nonzero_form(6), 1..4)) {
        for f in [FieldSpec::Rationals, FieldSpec::default()] {
            let m = InverseSystem::new(ctx(f), gens.iter().map(|g| build(f, g)).collect()).unwrap();
            let h = m.h_vector();
            prop_assert!(h.is_o_sequence());
            prop_assert_eq!(h[0], 1);
            for d in 0..=m.socle_degree() {
                let ann = m.annihilator_component(d).unwrap().len();
                prop_assert_eq!(h[d as usize] + ann, binomial(u64::from(d) + 2, 2) as usize);
            }
            prop_assert_eq!(m.annihilator_component(m.socle_degree() + 1).unwrap().len(),
                binomial(u64::from(m.socle_degree()) + 3, 2) as usize);
            let s = m.socle_vector();
            prop_assert_eq!(s.last(), h.last());
            prop_assert!(s.socle_type() >= 1);
            prop_assert_eq!(s[0], usize::from(m.socle_degree() == 0));
        }
    }

    #[test]
    fn principal_systems_are_symmetric(g in nonzero_form(7)) {
        let f = FieldSpec::default();
        let m = InverseSystem::new(ctx(f), vec![build(f, &g)]).unwrap();
        prop_assert!(m.h_vector().is_symmetric());
        prop_assert_eq!(m.is_level(), (true, 1));
    }

    #[test]
    fn relabeling_preserves_h(gens in prop::collection::vec(nonzero_form(6), 1..4), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let f = FieldSpec::default();
        let polys: Vec<Polynomial> = gens.iter().map(|g| build(f, g)).collect();
        let permuted: Vec<Polynomial> = polys.iter().map(|p| p.permute_vars(&perm).unwrap()).collect();
        let a = InverseSystem::new(ctx(f), polys).unwrap();
        let b = InverseSystem::new(ctx(f), permuted).unwrap();
        prop_assert_eq!(a.h_vector(), b.h_vector());
        prop_assert_eq!(a.socle_vector(), b.socle_vector());
    }

    #[test]
    fn rank_is_scale_free(coeffs in prop::collection::vec(-9i64..=9, 3), c in 1i64..1000, i in 0u32..9) {
        prop_assume!(coeffs.iter().any(|&x| x != 0));
        let f = FieldSpec::default();
        let m = specimen_module(9, ctx(f)).unwrap();
        let l = Polynomial::linear_form(ctx(f), &coeffs.iter().map(|&x| f.from_i64(x)).collect::<Vec<Scalar>>()).unwrap();
        let scaled = l.scale(&f.from_i64(c));
        let h = m.h_vector();
        let rank = multiplication_rank(&m, &l, i).unwrap();
        prop_assert_eq!(rank, multiplication_rank(&m, &scaled, i).unwrap());
        prop_assert!(rank <= h[i as usize].min(h[i as usize + 1]));
    }

    #[test]
    fn points_parameters_hold(e in 2u32..1000) {
        let p = points_parameters(e).unwrap();
        prop_assert_eq!(p.c.iter().sum::<u32>(), e);
    }

    #[test]
    fn target_is_o_sequence(e in 1u32..200) {
        prop_assert!(target_h_vector(e).unwrap().is_o_sequence());
    }
}

#[test]
fn best_rank_grows_with_trials() {
    let m = specimen_module(8, ctx(FieldSpec::default())).unwrap();
    let mut prev: Option<Vec<usize>> = None;
    for trials in 1..=6 {
        let report = wlp_probe(&m, trials, 11).unwrap();
        let best: Vec<usize> = report.per_degree.iter().map(|r| r.best_rank).collect();
        if let Some(p) = &prev {
            assert!(best.iter().zip(p).all(|(a, b)| a >= b));
        }
        prev = Some(best);
    }
}

#[test]
fn reports_independent_of_thread_count() {
    let m = specimen_module(12, ctx(FieldSpec::default())).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| wlp_probe(&m, 6, 99).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, wlp_probe(&m, 6, 99).unwrap());
}
