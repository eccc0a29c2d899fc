use decohere_liealg::builtins::{
    abelian, contraction_stages, extended_galilei, poincare, primed_to_galilei, rest_energy_shift, su2,
    GALILEI_SCHEDULE,
};
use decohere_liealg::json::{from_json, to_json};
use decohere_liealg::{same_structure, BasisMap, BracketSpec, Error, ExactAlgebra, LinComb, Rational, Scalar};

fn l(re: i64, im: i64) -> Scalar {
    Scalar::int(re, im)
}

fn pairs(v: &[(String, String)]) -> Vec<(&str, &str)> {
    v.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
}

fn identity_pairs(alg: &ExactAlgebra) -> Vec<(&str, &str)> {
    alg.names().iter().map(|n| (n.as_str(), n.as_str())).collect()
}

fn bracket(alg: &ExactAlgebra, a: &str, b: &str) -> String {
    alg.format_bracket(alg.index(a).unwrap(), alg.index(b).unwrap())
}

#[test]
fn su2_valid_and_tampered_su2_rejected() {
    let alg: ExactAlgebra = su2();
    assert_eq!(bracket(&alg, "J1", "J2"), "[J1,J2] = i J3");
    let mut b = vec![
        BracketSpec::new("J1", "J2", vec![("J3", l(0, 1)), ("J1", l(1, 0))]),
        BracketSpec::new("J2", "J3", vec![("J1", l(0, 1))]),
        BracketSpec::new("J3", "J1", vec![("J2", l(0, 1))]),
    ];
    match ExactAlgebra::from_brackets(&["J1", "J2", "J3"], b.clone()).unwrap_err() {
        Error::JacobiViolation { a, b, c, residual } => {
            assert_eq!((a.as_str(), b.as_str(), c.as_str()), ("J1", "J2", "J3"));
            assert_ne!(residual, "0");
        }
        other => panic!("unexpected {other:?}"),
    }
    b[0] = BracketSpec::new("J1", "J2", vec![("J3", l(0, 1))]);
    assert!(ExactAlgebra::from_brackets(&["J1", "J2", "J3"], b).is_ok());
}

#[test]
fn construction_errors() {
    let e = ExactAlgebra::from_brackets(&["A", "B"], vec![BracketSpec::new("A", "C", vec![])]);
    assert_eq!(e.unwrap_err(), Error::UnknownGenerator("C".into()));
    let e = ExactAlgebra::from_brackets(&["A", "A"], vec![]);
    assert_eq!(e.unwrap_err(), Error::DuplicateGenerator("A".into()));
    let e = ExactAlgebra::from_brackets(
        &["A", "B"],
        vec![
            BracketSpec::new("A", "B", vec![("A", l(1, 0))]),
            BracketSpec::new("B", "A", vec![("A", l(1, 0))]),
        ],
    );
    assert!(matches!(e, Err(Error::InconsistentBracket { .. })));
    let ok = ExactAlgebra::from_brackets(
        &["A", "B"],
        vec![
            BracketSpec::new("A", "B", vec![("A", l(1, 0))]),
            BracketSpec::new("B", "A", vec![("A", l(-1, 0))]),
        ],
    );
    assert!(ok.is_ok());
    let e = ExactAlgebra::from_brackets(&["A", "B"], vec![BracketSpec::new("A", "A", vec![("B", l(1, 0))])]);
    assert_eq!(e.unwrap_err(), Error::SelfBracket("A".into()));
    assert!(abelian::<Rational>(4).nonzero_brackets().next().is_none());
}

#[test]
fn poincare_conventions() {
    let p: ExactAlgebra = poincare();
    assert_eq!(p.dim(), 10);
    assert_eq!(bracket(&p, "P2", "J1"), "[P2,J1] = -i P3");
    assert_eq!(*p.bracket_of("J1", "P2").unwrap(), LinComb::term(p.index("P3").unwrap(), l(0, 1)));
    for x in ["P1", "P2", "P3", "J1", "J2", "J3"] {
        assert!(p.bracket_of(x, "H").unwrap().is_zero());
    }
    assert_eq!(bracket(&p, "P1", "K1"), "[P1,K1] = -i H");
    assert_eq!(bracket(&p, "K1", "K2"), "[K1,K2] = -i J3");
    assert!(p.bracket_of("P1", "K2").unwrap().is_zero());
    assert_eq!(*p.bracket_of("K3", "H").unwrap(), LinComb::term(p.index("P3").unwrap(), l(0, 1)));
}

#[test]
fn trivial_extension() {
    let p: ExactAlgebra = poincare();
    let e = p.extend_trivially("M").unwrap();
    assert_eq!(e.dim(), 11);
    let m = e.index("M").unwrap();
    assert!((0..11).all(|x| e.bracket(m, x).is_zero()));
    assert_eq!(p.extend_trivially("K2").unwrap_err(), Error::NameClash("K2".into()));
}

#[test]
fn basis_changes() {
    let e: ExactAlgebra = poincare().extend_trivially("M").unwrap();
    assert_eq!(e.change_basis(&BasisMap::identity(&e)).unwrap(), e);

    let r = e.change_basis(&rest_energy_shift(&e).unwrap()).unwrap();
    assert_eq!(r.names()[0], "Hbar");
    let hbar = r.index("Hbar").unwrap();
    let m = r.index("M").unwrap();
    for a in 0..11 {
        for b in a + 1..11 {
            let (na, nb) = (r.name(a), r.name(b));
            let expect = if na.starts_with('P') && nb.starts_with('K') && na[1..] == nb[1..] {
                // [P_i, K_i] = -i (Hbar + M)
                let mut v = LinComb::term(hbar, l(0, -1));
                v.add_term(m, &l(0, -1));
                v
            } else {
                // Same constants, with H relabelled Hbar.
                let ea = if na == "Hbar" { "H" } else { na };
                let mut v = LinComb::zero();
                for (k, c) in e.bracket_of(ea, nb).unwrap().iter() {
                    v.add_term(k, c);
                }
                v
            };
            assert_eq!(*r.bracket(a, b), expect, "[{na},{nb}]");
        }
    }

    let back = BasisMap::identity(&r)
        .replace("Hbar", "H", vec![("Hbar", l(1, 0)), ("M", l(1, 0))])
        .unwrap();
    assert_eq!(r.change_basis(&back).unwrap(), e);

    let singular = BasisMap::identity(&e).replace("H", "Z", vec![("M", l(1, 0))]).unwrap();
    assert!(matches!(e.change_basis(&singular), Err(Error::SingularMap(_))));
    let stuck = BasisMap::identity(&e)
        .replace("H", "Z", vec![("H", &l(1, 0) + &Scalar::eps(1))])
        .unwrap();
    assert!(matches!(e.change_basis(&stuck), Err(Error::SingularMap(_))));
}

#[test]
fn rescaling() {
    let s = contraction_stages::<Rational>().unwrap();
    let r = &s.rescaled;
    assert_eq!(bracket(r, "P1'", "K1'"), "[P1',K1'] = -i ε^2 Hbar' + -i M'");
    assert_eq!(bracket(r, "K1'", "K2'"), "[K1',K2'] = -i ε^2 J3'");
    assert!(!r.is_epsilon_free());

    let zero: Vec<(&str, i32)> = s.rebased.names().iter().map(|n| (n.as_str(), 0)).collect();
    let unchanged = s.rebased.rescale(&zero).unwrap();
    let primes: Vec<(String, String)> = s.rebased.names().iter().map(|n| (n.clone(), format!("{n}'"))).collect();
    assert!(same_structure(&s.rebased, &unchanged, &pairs(&primes)).unwrap());
    assert!(unchanged.is_epsilon_free());
    assert_eq!(
        s.rebased.rescale(&GALILEI_SCHEDULE[1..]).unwrap_err(),
        Error::IncompleteSchedule("Hbar".into())
    );
}

#[test]
fn contraction_yields_extended_galilei() {
    let s = contraction_stages::<Rational>().unwrap();
    let c = &s.contracted;
    assert!(c.is_epsilon_free());
    assert_eq!(bracket(c, "P2'", "K2'"), "[P2',K2'] = -i M'");
    assert!(c.bracket_of("K1'", "K3'").unwrap().is_zero());
    let g: ExactAlgebra = extended_galilei();
    assert!(same_structure(c, &g, &pairs(&primed_to_galilei())).unwrap());
    let unprimed: Vec<(&str, &str)> = identity_pairs(&g)
        .into_iter()
        .map(|(a, b)| (if a == "H" { "Hbar" } else { a }, b))
        .collect();
    assert!(!same_structure(&s.rebased, &g, &unprimed).unwrap());
    // Contracting an ε-free algebra changes nothing.
    assert_eq!(g.contract().unwrap(), g);
    // The reversed schedule leaves negative powers behind.
    let bad: Vec<(&str, i32)> = GALILEI_SCHEDULE.iter().map(|&(n, k)| (n, -k)).collect();
    assert!(matches!(s.rebased.rescale(&bad).unwrap().contract(), Err(Error::NegativePower { .. })));
}

#[test]
fn rescale_then_rebase_agrees_with_rebase_then_rescale() {
    let s = contraction_stages::<Rational>().unwrap();
    let schedule: Vec<(&str, i32)> = GALILEI_SCHEDULE
        .iter()
        .map(|&(n, k)| (if n == "Hbar" { "H" } else { n }, k))
        .collect();
    let rescaled_first = s.extended.rescale(&schedule).unwrap();
    // Hbar = H - M reads Hbar' = H' - ε^-2 M' in primed generators.
    let map = BasisMap::identity(&rescaled_first)
        .replace("H'", "Hbar'", vec![("H'", l(1, 0)), ("M'", -&Scalar::eps(-2))])
        .unwrap();
    let other = rescaled_first.change_basis(&map).unwrap();
    assert_eq!(other, s.rescaled);
    assert_eq!(other.contract().unwrap(), s.contracted);
}

#[test]
fn structure_comparison() {
    let a: ExactAlgebra = su2();
    assert!(same_structure(&a, &a, &identity_pairs(&a)).unwrap());
    let ab: ExactAlgebra = abelian(3);
    assert!(!same_structure(&a, &ab, &[("J1", "X1"), ("J2", "X2"), ("J3", "X3")]).unwrap());
    assert!(matches!(
        same_structure(&a, &ab, &[("J1", "X1"), ("J2", "X1"), ("J3", "X3")]),
        Err(Error::NotBijective(_))
    ));
    assert!(matches!(same_structure(&a, &ab, &[("J1", "X1")]), Err(Error::NotBijective(_))));
}

#[test]
fn jacobi_holds_at_every_stage() {
    let s = contraction_stages::<Rational>().unwrap();
    for alg in [&s.source, &s.extended, &s.rebased, &s.rescaled, &s.contracted] {
        for a in 0..alg.dim() {
            for b in a + 1..alg.dim() {
                for c in b + 1..alg.dim() {
                    assert!(alg.jacobi_residual(a, b, c).is_zero());
                }
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let s = contraction_stages::<Rational>().unwrap();
    for alg in [&s.rescaled, &s.contracted] {
        assert_eq!(from_json(&to_json(alg)).unwrap(), *alg);
    }
    let text = r#"{"generators":["A","B"],"brackets":{"B,A":[{"gen":"A","re_num":"123456789012345678901234567890","re_den":3,"im_num":0,"im_den":1,"eps_pow":-1}]}}"#;
    let alg = from_json(text).unwrap();
    assert!(to_json(&alg).contains("\"-41152263004115226300411522630\""));
    assert!(matches!(from_json(r#"{"generators":["A"],"brackets":{"A":[]}}"#), Err(Error::Json(_))));
    assert!(matches!(
        from_json(r#"{"generators":["A","B"],"brackets":{"A,B":[{"gen":"A","re_num":1,"re_den":0,"im_num":0,"im_den":1,"eps_pow":0}]}}"#),
        Err(Error::Json(_))
    ));
}
