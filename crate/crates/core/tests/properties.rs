use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scrollsec_core::delpezzo::{depth_predict, veronese_classify, VeroneseClass};
use scrollsec_core::exactfield::determinant;
use scrollsec_core::sampling::{random_nonzero_vector, random_p1, random_vector, StratifiedSampler};
use scrollsec_core::secant::{classify, classify_direct, SecantOptions};
use scrollsec_core::strata::stratum_geometric;
use scrollsec_core::{Field, Mat, Scroll, ScrollPoint, ScrollSpec, SecantType};

const Q: u64 = 10007;

fn specs() -> impl Strategy<Value = ScrollSpec> {
    (prop::collection::vec(1u32..=4, 1..=4), -1i32..=1)
        .prop_filter_map("degree at least 3", |(mut a, h)| {
            a.sort_unstable();
            ScrollSpec::new(a, h).ok()
        })
}

fn scroll(spec: ScrollSpec) -> Scroll {
    Scroll::new(spec, Field::prime(Q).unwrap())
}

fn random_param(s: &Scroll, rng: &mut ChaCha8Rng) -> ScrollPoint {
    let f = *s.field();
    ScrollPoint::new(
        random_p1(&f, rng),
        random_nonzero_vector(&f, s.spec().n(), rng),
        random_vector(&f, s.spec().vertex_len(), rng),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parametrized_points_satisfy_the_generators(spec in specs(), seed in any::<u64>()) {
        let s = scroll(spec);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..16 {
            let p = s.embed(&random_param(&s, &mut rng)).unwrap();
            prop_assert!(s.values(&p).iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn tangent_spaces_along_a_ruling_meet_in_the_ruling(spec in specs(), seed in any::<u64>()) {
        let s = scroll(spec);
        let f = *s.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p1 = random_param(&s, &mut rng);
        let mut p2 = random_param(&s, &mut rng);
        p2.x = p1.x;
        let ruling = s.ruling_subspace(p1.x);
        let t1 = s.tangent_space(&p1).unwrap();
        let t2 = s.tangent_space(&p2).unwrap();
        prop_assert_eq!(t1.dim(), s.spec().dim());
        prop_assert!(t1.contains_subspace(&f, &ruling));
        let proportional = (0..p1.u.len()).all(|i| (0..p1.u.len())
            .all(|j| f.det2(p1.u[i], p2.u[j], p1.u[j], p2.u[i]).is_zero()));
        if !proportional {
            let meet = t1.intersect(&f, &t2);
            prop_assert_eq!(meet.dim(), ruling.dim());
            prop_assert!(meet.contains_subspace(&f, &ruling));
        }
    }

    #[test]
    fn signatures_stay_in_the_table(spec in specs(), seed in any::<u64>()) {
        let s = scroll(spec);
        let h = s.spec().h() as i64;
        let opts = SecantOptions::default();
        let sampler = StratifiedSampler::new(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let p = sampler.sample(&mut rng);
            let sig = classify(&s, &p, &opts).unwrap();
            prop_assert_eq!(SecantType::from_signature(sig.s, sig.rank), Some(sig.label));
            prop_assert_eq!(sig.sec_dim, h + 1 + sig.s);
            prop_assert_eq!(sig.locus_dim, h + sig.label.j());
            prop_assert_eq!(classify_direct(&s, &p, &opts).unwrap(), sig);
        }
    }

    #[test]
    fn strata_chain_and_depth(spec in specs(), seed in any::<u64>()) {
        let s = scroll(spec);
        let opts = SecantOptions::default();
        let sampler = StratifiedSampler::new(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let p = sampler.sample(&mut rng);
            let r = stratum_geometric(&s, &p, &opts).unwrap();
            prop_assert!(r.memberships.chain_holds());
            prop_assert!(r.agrees_with_signature);
            let sig = classify(&s, &p, &opts).unwrap();
            let d = depth_predict(s.spec(), &sig, r.memberships.sec);
            if d.linearly_normal {
                prop_assert_eq!(d.t, sig.locus_dim + 2);
            } else {
                prop_assert_eq!((d.t, sig.label), (1, SecantType::Empty2Z));
            }
            prop_assert_eq!(d.acm, d.j == s.spec().n() as i64);
        }
    }

    #[test]
    fn veronese_rank_three_iff_nonzero_determinant(v in prop::collection::vec(0u64..11, 6)) {
        let f = Field::prime(11).unwrap();
        prop_assume!(v.iter().any(|&x| x != 0));
        let e: Vec<_> = v.iter().map(|&x| f.from_u64(x)).collect();
        let m = Mat::from_rows(3, &[[e[0], e[1], e[2]], [e[1], e[3], e[4]], [e[2], e[4], e[5]]]);
        let r = veronese_classify(&f, &m, -1).unwrap();
        let det = !determinant(&f, &m).is_zero();
        prop_assert_eq!(r.rank == 3, det);
        prop_assert_eq!(r.class == VeroneseClass::Empty, det);
        prop_assert_eq!(r.class == VeroneseClass::OnVariety, r.rank == 1);
    }
}
