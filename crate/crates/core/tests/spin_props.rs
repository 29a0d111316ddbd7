use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triality_core::sample::Sampler;
use triality_core::symspace::{
    act, act_semidirect, gamma_sphere, is_fixed_by_tau, satisfies_fix_tau_characterization, sigma_sphere,
    tau_sphere,
};
use triality_core::triality::{is_octonion_automorphism, kappa_conjugate, spin_from_unit};
use triality_core::{
    ApproxReal, GammaElement, Octonion, QuadExt, Rational, SemidirectElement, SpherePoint, TrialityTriple,
};

fn sampler(seed: u64) -> Sampler {
    Sampler::new(ChaCha8Rng::seed_from_u64(seed), 1e-9)
}

fn gamma() -> impl Strategy<Value = GammaElement> {
    (0usize..6).prop_map(|i| GammaElement::ALL[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn words_are_verified_triples(seed in any::<u64>()) {
        let mut smp = sampler(seed);
        let g = smp.spin_word::<Rational>().unwrap();
        let (a, b, c) = g.clone().into_parts();
        prop_assert_eq!(TrialityTriple::verify(a, b, c).unwrap(), g.clone());
        prop_assert_eq!(g.mul(&g.inverse().unwrap()).unwrap(), TrialityTriple::identity());
    }

    #[test]
    fn group_law_is_associative(seed in any::<u64>()) {
        let mut smp = sampler(seed);
        let (g, h, k) = (
            smp.spin_word::<Rational>().unwrap(),
            smp.spin_word::<Rational>().unwrap(),
            smp.spin_word::<Rational>().unwrap(),
        );
        let left = g.mul(&h).unwrap().mul(&k).unwrap();
        let right = g.mul(&h.mul(&k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let inv = g.mul(&h).unwrap().inverse().unwrap();
        prop_assert_eq!(inv, h.inverse().unwrap().mul(&g.inverse().unwrap()).unwrap());
    }

    #[test]
    fn gamma_acts_by_automorphisms(seed in any::<u64>(), w in gamma(), v in gamma()) {
        let mut smp = sampler(seed);
        let (g, h) = (smp.spin_word::<Rational>().unwrap(), smp.spin_word::<Rational>().unwrap());
        let lhs = g.mul(&h).unwrap().apply(w).unwrap();
        let rhs = g.apply(w).unwrap().mul(&h.apply(w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.apply(w.mul(v)).unwrap(), g.apply(v).unwrap().apply(w).unwrap());
    }

    #[test]
    fn spin_of_conjugate_is_inverse(seed in any::<u64>()) {
        let mut smp = sampler(seed);
        let s = smp.unit::<Rational>();
        let g = spin_from_unit(&s).unwrap();
        prop_assert_eq!(spin_from_unit(&s.conj()).unwrap(), g.inverse().unwrap());
        prop_assert_eq!(kappa_conjugate(&kappa_conjugate(g.c()).unwrap()).unwrap(), g.c().clone());
    }

    #[test]
    fn g2_words_fix_everything(seed in any::<u64>()) {
        let mut smp = sampler(seed);
        let k = smp.g2_word::<QuadExt>().unwrap();
        prop_assert!(k.is_g2());
        prop_assert!(is_octonion_automorphism(k.a()));
        prop_assert_eq!(k.tau().unwrap(), k.clone());
        prop_assert_eq!(k.sigma().unwrap(), k);
    }

    #[test]
    fn sphere_action_is_a_left_action(seed in any::<u64>()) {
        let mut smp = sampler(seed);
        let (g, h) = (smp.spin_word::<Rational>().unwrap(), smp.spin_word::<Rational>().unwrap());
        let p = smp.sphere_point::<Rational>();
        prop_assert_eq!(act(&g.mul(&h).unwrap(), &p), act(&g, &act(&h, &p)));
        prop_assert_eq!(act(&TrialityTriple::identity(), &p), p);
    }

    #[test]
    fn sphere_maps_generate_s3(seed in any::<u64>(), w in gamma(), v in gamma()) {
        let mut smp = sampler(seed);
        let p = smp.sphere_point::<Rational>();
        prop_assert_eq!(tau_sphere(&tau_sphere(&tau_sphere(&p))), p.clone());
        prop_assert_eq!(sigma_sphere(&sigma_sphere(&p)), p.clone());
        prop_assert_eq!(gamma_sphere(w.mul(v), &p), gamma_sphere(w, &gamma_sphere(v, &p)));
        let (g, q) = smp.witnessed_point::<Rational>().unwrap();
        let el = SemidirectElement::new(g, w);
        prop_assert_eq!(act_semidirect(&el.inverse().unwrap(), &act_semidirect(&el, &q)), q);
    }

    #[test]
    fn cube_roots_give_tau_fixed_points(seed in any::<u64>()) {
        let mut smp = sampler(seed);
        let v = smp.imaginary_unit::<QuadExt>();
        let p = triality_core::symspace::fix_tau_point(&v).unwrap();
        prop_assert!(is_fixed_by_tau(&p));
        prop_assert!(satisfies_fix_tau_characterization(&p));
        let moved = smp.sphere_point::<QuadExt>();
        prop_assert_eq!(is_fixed_by_tau(&moved), satisfies_fix_tau_characterization(&moved));
    }

    #[test]
    fn float_words_stay_within_tolerance(seed in any::<u64>()) {
        let mut smp = sampler(seed);
        let g = smp.spin_word::<ApproxReal>().unwrap();
        let p = smp.sphere_point::<ApproxReal>();
        let back = act(&g.inverse().unwrap(), &act(&g, &p));
        prop_assert!(back.residual(&p) <= 1e-9, "{}", back.residual(&p));
    }

    #[test]
    fn serde_round_trips(seed in any::<u64>(), w in gamma()) {
        let mut smp = sampler(seed);
        let x = smp.octonion::<QuadExt>();
        let text = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Octonion<QuadExt>>(&text).unwrap(), x);
        let g = smp.spin_word::<Rational>().unwrap();
        let text = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<TrialityTriple<Rational>>(&text).unwrap(), g);
        let p = smp.sphere_point::<Rational>();
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<SpherePoint<Rational>>(&text).unwrap(), p);
        let text = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<GammaElement>(&text).unwrap(), w);
        let f = smp.octonion::<ApproxReal>();
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<Octonion<ApproxReal>>(&text).unwrap(), f);
    }
}

#[test]
fn tampered_triple_is_rejected_on_load() {
    let g = spin_from_unit(&sampler(3).unit::<Rational>()).unwrap();
    let mut json: serde_json::Value = serde_json::to_value(&g).unwrap();
    let key = json.as_object().unwrap().keys().next().unwrap().clone();
    json[&key] = serde_json::to_value(triality_core::Mat8::<Rational>::identity()).unwrap();
    assert!(serde_json::from_value::<TrialityTriple<Rational>>(json).is_err());
}
