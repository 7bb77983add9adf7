use difftann::diffmod::{DiffCategory, ModuleMorphism};
use difftann::field::{DiffField, RationalFunction};
use difftann::gen;
use difftann::reconstruct::Reconstruction;
use difftann::structmaps::StructMaps;
use proptest::prelude::*;

fn k() -> DiffField {
    DiffField::standard()
}

fn elem(seed: u64) -> RationalFunction {
    gen::element(&mut gen::rng(seed), &k(), 3)
}

fn nonzero(seed: u64) -> RationalFunction {
    (0..).map(|i| elem(seed.wrapping_add(i * 7919))).find(|a| !a.is_zero()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_laws(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (elem(a), elem(b), elem(c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&(&(&a - &b) + &b) - &a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in any::<u64>(), b in any::<u64>()) {
        let (a, b) = (elem(a), nonzero(b));
        prop_assert_eq!(&(&a / &b) * &b, a);
    }

    #[test]
    fn sums_match_cross_multiplication(a in any::<u64>(), b in any::<u64>()) {
        // n1/d1 + n2/d2 against (n1·d2 + n2·d1)/(d1·d2) rebuilt from parts
        let (a, b) = (elem(a), elem(b));
        let vars = a.vars().clone();
        let num = a.numerator().mul(b.denominator()).add(&b.numerator().mul(a.denominator()));
        let den = a.denominator().mul(b.denominator());
        prop_assert_eq!(&a + &b, RationalFunction::from_parts(&vars, num, den).unwrap());
    }

    #[test]
    fn derivations_obey_leibniz_and_commute(a in any::<u64>(), b in any::<u64>()) {
        let f = k();
        let (a, b) = (elem(a), elem(b));
        prop_assert_eq!(f.dx(&(&a * &b)), &(&f.dx(&a) * &b) + &(&a * &f.dx(&b)));
        prop_assert_eq!(f.dt(&(&a * &b)).unwrap(), &(&f.dt(&a).unwrap() * &b) + &(&a * &f.dt(&b).unwrap()));
        prop_assert_eq!(f.dx(&f.dt(&a).unwrap()), f.dt(&f.dx(&a)).unwrap());
    }

    #[test]
    fn prolongation_is_functorial(seed in any::<u64>(), dim in 1usize..=3) {
        let cat = DiffCategory::parametric(&k()).unwrap();
        let mut rng = gen::rng(seed);
        let m = gen::module(&mut rng, &k(), dim, 2, "M");
        let f = gen::gauge(&mut rng, &m, false, "N").unwrap();
        let g = gen::gauge(&mut rng, &f.dst, false, "P").unwrap();
        let gf = g.after(&f).unwrap();
        let fp = cat.prolong_morphism(&f).unwrap();
        let gp = cat.prolong_morphism(&g).unwrap();
        prop_assert!(fp.is_morphism() && gp.is_morphism());
        prop_assert_eq!(gp.after(&fp).unwrap().mat, cat.prolong_morphism(&gf).unwrap().mat);
    }

    #[test]
    fn inclusion_and_projection_are_natural(seed in any::<u64>(), dim in 1usize..=2) {
        let cat = DiffCategory::parametric(&k()).unwrap();
        let maps = StructMaps::new(&cat);
        let mut rng = gen::rng(seed);
        let m = gen::module(&mut rng, &k(), dim, 2, "M");
        let f: ModuleMorphism = gen::gauge(&mut rng, &m, seed % 2 == 0, "N").unwrap();
        prop_assert!(maps.check_naturality_i_phi(&f).unwrap().pass);
        prop_assert!(maps.check_naturality_t(&f, &m).unwrap().pass);
    }

    #[test]
    fn realization_is_multiplicative(seed in any::<u64>()) {
        let x = difftann::diffmod::DiffModule::parse(&k(), &[vec!["t", "x"], vec!["1", "t*x"]], "X").unwrap();
        let rc = Reconstruction::new(&x, 2).unwrap();
        let mut rng = gen::rng(seed);
        let v = rc.random_object(&mut rng, 2, 4, 1).unwrap();
        let w = rc.random_object(&mut rng, 2, 4, 1).unwrap();
        let a = rc.random_coefficient(&mut rng, &v);
        let b = rc.random_coefficient(&mut rng, &w);
        prop_assert!(rc.check_multiplicative(&a, &b).unwrap().pass);
        prop_assert!(rc.check_product_rule(&a, &b).unwrap().pass);
        prop_assert!(rc.check_diffdual(&a).unwrap().pass);
    }
}

#[test]
fn gcd_of_a_long_remainder_sequence_finishes() {
    // a derivative whose remainder sequence used to let rational coefficients explode
    let f = k();
    let uv = f
        .parse(
            "(-2*x^5 + 18*x^4*t - 40*x^3*t^2 + 24*x^2*t^3 - 14/3*x^4 + 35*x^3*t - 142/3*x^2*t^2 + 35*x*t^3 - 18*t^4 \
             + 6*x^3 - 124/3*x^2*t + 148/3*x*t^2 - 14*t^3 - 13*x^2 + 32*x*t + 11*t^2 - 5*x + 15*t)\
             /(x^3 - 7*x^2*t + 6*x*t^2 + 1/3*x^2 - 7/3*x*t + 2*t^2)",
        )
        .unwrap();
    let den = RationalFunction::from_poly(uv.vars(), uv.denominator().clone());
    let d = f.dt(&uv).unwrap();
    let back = &(&d * &den) - &f.dt(&(&uv * &den)).unwrap();
    let dden = f.dt(&den).unwrap();
    assert_eq!(back, -&(&uv * &dden));
}
