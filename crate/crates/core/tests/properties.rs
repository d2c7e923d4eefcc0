use num_complex::Complex;
use proptest::prelude::*;

use cstar_info::algebra::{AtomicAlgebra, Element, RealFunction, TensorElement};
use cstar_info::channel::{
    build_code_and_decoder, classify, info_metrics, joint, numerical_rank, Channel, RANK_TOLERANCE,
};
use cstar_info::information::{
    code_metrics, entropy_base, huffman_code, kraft_check, kraft_construct, Code,
};
use cstar_info::probability::{
    annihilator_projection, distribution_of, lln_moment, mean_distribution, ProductState, State,
};
use cstar_info::{Guard, Tolerance};

fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

fn element(max_dim: usize) -> impl Strategy<Value = Element<f64>> {
    (1..=max_dim).prop_flat_map(|d| {
        prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), d).prop_map(|v| {
            Element::new(
                AtomicAlgebra::new(v.len()).unwrap(),
                v.into_iter().map(|(a, b)| Complex::new(a, b)).collect(),
            )
            .unwrap()
        })
    })
}

fn real_element(d: usize) -> impl Strategy<Value = Element<f64>> {
    prop::collection::vec(-10.0..10.0f64, d).prop_map(|v| Element::from_real(&v).unwrap())
}

fn weights(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01..1.0f64, d).prop_map(|v| {
        let s: f64 = v.iter().sum();
        v.into_iter().map(|x| x / s).collect()
    })
}

fn state(d: usize) -> impl Strategy<Value = State<f64>> {
    weights(d).prop_map(|w| State::from_weights(&w).unwrap())
}

fn channel(max_in: usize, max_out: usize) -> impl Strategy<Value = Channel<f64>> {
    (1..=max_in, 1..=max_out).prop_flat_map(|(m, n)| {
        prop::collection::vec(weights(n), m).prop_map(|rows| Channel::from_rows(rows).unwrap())
    })
}

/// Random trie leaves over an `n`-ary alphabet.
fn prefix_code(n: usize) -> impl Strategy<Value = Code> {
    prop::collection::vec((any::<prop::sample::Index>(), prop::bool::weighted(0.8)), 0..8).prop_map(
        move |ops| {
            let mut leaves: Vec<Vec<usize>> = (0..n).map(|s| vec![s]).collect();
            for (pick, _) in &ops {
                let parent = leaves.swap_remove(pick.index(leaves.len()));
                leaves.extend((0..n).map(|s| {
                    let mut w = parent.clone();
                    w.push(s);
                    w
                }));
            }
            let keep: Vec<bool> = ops.iter().map(|(_, k)| *k).collect();
            let mut kept: Vec<Vec<usize>> = leaves
                .into_iter()
                .enumerate()
                .filter(|(i, _)| keep.get(*i).copied().unwrap_or(true))
                .map(|(_, w)| w)
                .collect();
            if kept.is_empty() {
                kept.push(vec![0]);
            }
            Code::new(n, kept).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn c_star_identity(x in element(8)) {
        let lhs = x.try_mul(&x.star()).unwrap().norm();
        let rhs = x.norm() * x.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1.0));
    }

    #[test]
    fn star_is_involutive_antilinear(x in element(6), re in -3.0..3.0f64, im in -3.0..3.0f64) {
        let c = Complex::new(re, im);
        prop_assert!(x.star().star().approx_eq(&x, &tol()));
        prop_assert!(x.scale(c).star().approx_eq(&x.star().scale(c.conj()), &tol()));
    }

    #[test]
    fn spectral_mapping(x in (1..=8usize).prop_flat_map(real_element)) {
        let f = RealFunction::polynomial(vec![1.0, -2.0, 0.5]);
        let fx = x.apply(&f, true, &tol()).unwrap();
        for c in fx.spectrum(&tol()) {
            prop_assert!(x.spectrum(&tol()).iter().any(|s| (f.eval(s.re) - c.re).abs() <= 1e-9));
        }
        for s in x.spectrum(&tol()) {
            prop_assert!(fx.spectrum(&tol()).iter().any(|c| (f.eval(s.re) - c.re).abs() <= 1e-9));
        }
    }

    #[test]
    fn positive_negative_parts(x in (1..=8usize).prop_flat_map(real_element)) {
        let (p, n) = x.pos_neg_parts(&tol()).unwrap();
        prop_assert!(p.try_sub(&n).unwrap().approx_eq(&x, &tol()));
        prop_assert!(p.try_mul(&n).unwrap().norm() <= 1e-12);
        prop_assert!(p.is_positive(&tol()) && n.is_positive(&tol()));
        let sq = x.abs(&tol()).unwrap();
        prop_assert!(sq.try_mul(&sq).unwrap().approx_eq(&x.try_mul(&x).unwrap(), &tol()));
    }

    #[test]
    fn tensor_norm_is_multiplicative(a in element(3), b in element(3)) {
        let ta = TensorElement::from_element(&a);
        let tb = TensorElement::from_element(&b);
        if a.dim() == b.dim() {
            let prod = ta.tensor_product(&tb).unwrap();
            prop_assert!((prod.norm() - a.norm() * b.norm()).abs() <= 1e-9 * (a.norm() * b.norm()).max(1.0));
        }
    }

    #[test]
    fn tensor_ops_match_dense(
        xs in prop::collection::vec(real_element(2), 2..5),
        positions in prop::collection::vec(1..=6usize, 4),
    ) {
        // sparse sums and products of embedded elements agree with dense level-6 arithmetic
        let k = 6;
        let mut sum = TensorElement::zero(xs[0].algebra());
        let mut prod = TensorElement::identity(xs[0].algebra());
        for (x, &p) in xs.iter().zip(&positions) {
            let e = TensorElement::embed(x, p);
            sum = sum.try_add(&e).unwrap();
            prod = prod.try_mul(&e).unwrap();
        }
        let dense_sum = sum.truncate_to_level(k).unwrap();
        let dense_prod = prod.truncate_to_level(k).unwrap();
        for s in 0..(1usize << k) {
            // position 1 is the most significant digit
            let digit = |p: usize| (s >> (k - p)) & 1;
            let mut ds = 0.0;
            let mut dp = 1.0;
            for (x, &p) in xs.iter().zip(&positions) {
                let v = x.coeffs()[digit(p)].re;
                ds += v;
                dp *= v;
            }
            prop_assert!((dense_sum[s].re - ds).abs() <= 1e-9);
            prop_assert!((dense_prod[s].re - dp).abs() <= 1e-9 * dp.abs().max(1.0));
        }
        let back = TensorElement::from_dense(xs[0].algebra(), k, &dense_sum).unwrap();
        prop_assert!(back.approx_eq(&sum.with_level(k).unwrap(), &tol()));
    }

    #[test]
    fn annihilator_mass_matches_distribution(
        w in state(6),
        vals in prop::collection::vec(0..3i32, 6),
    ) {
        let x = Element::from_real(&vals.iter().map(|&v| v as f64).collect::<Vec<_>>()).unwrap();
        let dist = distribution_of(std::slice::from_ref(&x), &w, &tol()).unwrap();
        let total: f64 = dist.atoms().iter().map(|a| a.mass).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        let mut prev = 0.0;
        for a in dist.atoms() {
            let j = annihilator_projection(w.algebra(), std::slice::from_ref(&x), &a.value, &tol()).unwrap();
            prop_assert!(j.is_projection(&tol()));
            prop_assert!((w.expect(&j).unwrap() - a.mass).abs() <= 1e-12);
            let c = dist.cdf(&a.value);
            prop_assert!(c >= prev);
            prev = c;
        }
        prop_assert!((prev - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn scaled_variance_is_constant(p in 0.01..0.99f64, n in 1..200usize) {
        let w = State::from_weights(&[1.0 - p, p]).unwrap();
        let v = lln_moment(&w, n, 2).unwrap() * n as f64;
        prop_assert!((v - p * (1.0 - p)).abs() <= 1e-12);
    }

    #[test]
    fn pushforward_matches_tensor_enumeration(w in state(3), n in 1..=7usize) {
        let x = Element::from_real(&[0.0, 1.0, 3.5]).unwrap();
        let dist = mean_distribution(&w, &x, n, &tol()).unwrap();
        let mut sum = TensorElement::zero(w.algebra());
        for i in 1..=n {
            sum = sum.try_add(&TensorElement::embed(&x, i)).unwrap();
        }
        let s = sum.with_level(n).unwrap().scale(Complex::new(1.0 / n as f64, 0.0));
        let omega = ProductState::iid(&w);
        for a in dist.atoms() {
            let t = a.value[0];
            let ind = RealFunction::total("indicator", move |v: f64| if (v - t).abs() <= 1e-9 { 1.0 } else { 0.0 });
            let q = s.apply(&ind, true, &tol()).unwrap();
            prop_assert!((omega.evaluate(&q).unwrap().re - a.mass).abs() <= 1e-12);
        }
    }

    #[test]
    fn prefix_codes_satisfy_kraft(code in prop_oneof![prefix_code(2), prefix_code(3)]) {
        prop_assert!(code.is_prefix_free());
        prop_assert!(code.embedded_words_orthogonal::<f64>());
        prop_assert!(kraft_check(&code.lengths(), code.alphabet_size()).unwrap());
    }

    #[test]
    fn kraft_iff_constructible(lengths in prop::collection::vec(1..=6usize, 1..10), n in 2..=3usize) {
        let ok = kraft_check(&lengths, n).unwrap();
        match kraft_construct(&lengths, n) {
            Ok(code) => {
                prop_assert!(ok);
                prop_assert!(code.is_prefix_free());
                prop_assert_eq!(code.lengths(), lengths);
            }
            Err(_) => prop_assert!(!ok),
        }
    }

    #[test]
    fn orthogonality_iff_prefix_free(words in prop::collection::vec(prop::collection::vec(0..2usize, 1..4), 1..5)) {
        let code = Code::new(2, words).unwrap();
        prop_assert_eq!(code.is_prefix_free(), code.embedded_words_orthogonal::<f64>());
    }

    #[test]
    fn noiseless_bound_holds(code in prefix_code(2), seed in weights(64)) {
        let d = code.source_dim();
        let s: f64 = seed[..d].iter().sum();
        let w = State::from_weights(&seed[..d].iter().map(|x| x / s).collect::<Vec<_>>()).unwrap();
        prop_assert!(code_metrics(&code, &w).unwrap().noiseless_bound_value >= -1e-9);
    }

    #[test]
    fn huffman_within_one_symbol(w in (2..=10usize).prop_flat_map(state), n in 2..=4usize) {
        let code = huffman_code(&w, n).unwrap();
        prop_assert!(code.is_prefix_free());
        let m = code_metrics(&code, &w).unwrap();
        let h = entropy_base(&w, n as f64);
        prop_assert!(m.expected_length >= h - 1e-9 && m.expected_length < h + 1.0);
    }

    #[test]
    fn push_state_is_dual_to_apply(c in channel(4, 4), seed in weights(4), y in real_element(4)) {
        let m = c.input_dim();
        let s: f64 = seed[..m].iter().sum();
        let w = State::from_weights(&seed[..m].iter().map(|x| x / s).collect::<Vec<_>>()).unwrap();
        let y = Element::from_real(&y.real_coeffs()[..c.output_dim()]).unwrap();
        let lhs = c.push_state(&w).unwrap().expect(&y).unwrap();
        let rhs = w.expect(&c.apply(&y).unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9);
        // unital and positive
        prop_assert!(c.apply(&Element::identity(&c.output_algebra())).unwrap()
            .approx_eq(&Element::identity(&c.input_algebra()), &tol()));
        let sq = y.try_mul(&y).unwrap();
        prop_assert!(c.apply(&sq).unwrap().is_positive(&tol()));
    }

    #[test]
    fn joint_marginals(c in channel(3, 3), seed in weights(3), k in 1..=3usize) {
        let m = c.input_dim();
        let s: f64 = seed[..m].iter().sum();
        let w = State::from_weights(&seed[..m].iter().map(|x| x / s).collect::<Vec<_>>()).unwrap();
        let j = joint(&c, &w, k, &Guard::default()).unwrap().joint_state;
        let input = ProductState::iid(&w).dense_weights(k);
        for (a, b) in j.input_marginal().iter().zip(&input) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        let ck = c.power(k);
        let out = ck.push_state(&State::from_weights(&input).unwrap()).unwrap();
        for (a, b) in j.output_marginal().iter().zip(out.weights()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn useless_iff_rank_one_iff_no_information(c in channel(4, 4), w in state(4)) {
        let m = c.input_dim();
        let s: f64 = w.weights()[..m].iter().sum();
        let w = State::from_weights(&w.weights()[..m].iter().map(|x| x / s).collect::<Vec<_>>()).unwrap();
        let class = classify(&c, Some(&w), &tol()).unwrap();
        let rank1 = numerical_rank(&c.rows(), RANK_TOLERANCE) <= 1;
        prop_assert_eq!(class.is_useless(), rank1);
        let info = info_metrics(&c, &w).unwrap();
        if rank1 {
            prop_assert!(info.i_xy.abs() <= 1e-8);
        }
        if class.is_lossless() {
            prop_assert!(info.h_x_given_y.abs() <= 1e-12);
        }
    }

    #[test]
    fn rank_one_channels_are_useless(row in weights(4), m in 1..=4usize, w in state(4)) {
        let c = Channel::useless(m, &row).unwrap();
        let s: f64 = w.weights()[..m].iter().sum();
        let w = State::from_weights(&w.weights()[..m].iter().map(|x| x / s).collect::<Vec<_>>()).unwrap();
        prop_assert!(classify(&c, Some(&w), &tol()).unwrap().is_useless());
        prop_assert!(info_metrics(&c, &w).unwrap().i_xy.abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decoders_are_lossless(p in 0.0..0.3f64, k in 2..=6usize, seed in any::<u64>()) {
        let c = Channel::bsc(p).unwrap();
        let w = State::from_weights(&[0.5, 0.5]).unwrap();
        let cd = build_code_and_decoder(&c, &w, k, 0.5, seed, &Guard::default()).unwrap();
        let l = cd.decoder.to_channel().unwrap();
        prop_assert!(classify(&l, None, &tol()).unwrap().is_lossless());
        let dev = cd.deviation();
        let err = cd.error_prob();
        prop_assert!(dev >= 0.0 && (0.0..=1.0).contains(&err));
        prop_assert_eq!(dev <= 1e-12, err <= 1e-12);
    }
}
