use unifrac::category::validate_functor;
use unifrac::fraction::*;
use unifrac::instances::{make_named, make_poset, Selector, POSITIVE};
use unifrac::three_arrow::{enumerate_three_arrows, ThreeArrow};
use unifrac::{FinCategory, FunctorTable, Mor, Which};

fn fc(name: &str) -> FractionCategory {
    build_fraction_category(make_named(name).unwrap().dd).unwrap()
}

fn arrow(c: &FinCategory, s: &str) -> ThreeArrow {
    ThreeArrow::parse(c, s).unwrap()
}

#[test]
fn build_counts() {
    let walk = fc("WALK");
    assert_eq!((walk.as_category.num_objects(), walk.num_classes()), (2, 4));
    let fr = &walk.as_category;
    for x in fr.objects() {
        for y in fr.objects() {
            assert_eq!(fr.hom(x, y).len(), 1);
        }
    }
    assert_eq!(fc("CH3").num_classes(), 7);
    let dia = fc("DIA");
    assert_eq!(dia.num_classes(), 16);
    assert!(dia.as_category.morphisms().all(|m| dia.as_category.is_iso(m)));
    let z4 = fc("Z4");
    assert_eq!(z4.num_classes(), 4);
    let mut images: Vec<Mor> = z4.base().morphisms().map(|f| z4.localise(f)).collect();
    images.sort();
    images.dedup();
    assert_eq!(images.len(), 4);
}

#[test]
fn not_uni_fractionable_is_rejected() {
    let err = build_fraction_category(make_named("IDEM").unwrap().dd).unwrap_err();
    assert!(err.to_string().contains("(WU)"), "{err}");
}

#[test]
fn class_ids_name_the_smallest_member() {
    let ch3 = fc("CH3");
    let arrows = enumerate_three_arrows(ch3.dd());
    for k in ch3.as_category.morphisms() {
        let rep = ch3.representative(k);
        let pos = arrows.iter().position(|t| *t == rep).unwrap();
        assert_eq!(ch3.class_name(k), format!("q{pos}"));
    }
}

#[test]
fn laws_and_localisation() {
    for name in POSITIVE {
        let f = fc(name);
        assert!(f.as_category.validate().is_ok(), "{name}");
        assert!(validate_functor(&f.localisation, f.base(), &f.as_category).is_ok(), "{name}");
        for x in f.base().objects() {
            let id = f.base().identity(x);
            assert_eq!(f.class_of(&ThreeArrow::new(id, id, id)).unwrap(), f.identity_class(x));
        }
        for d in f.dd().members(Which::D) {
            let inv = f.inverse_of_denominator(d).unwrap();
            let fr = &f.as_category;
            let ld = f.localise(d);
            assert_eq!(fr.comp(ld, inv), Some(fr.identity(fr.src(ld))), "{name}");
            assert_eq!(fr.comp(inv, ld), Some(fr.identity(fr.tgt(ld))), "{name}");
        }
    }
}

#[test]
fn composition_examples() {
    let ch3 = fc("CH3");
    let c = ch3.base();
    let t01 = arrow(c, "i_0,m_0_1,i_1");
    let t12 = arrow(c, "i_1,m_1_2,i_2");
    let expect = ch3.class_of(&arrow(c, "i_0,m_0_2,i_2")).unwrap();
    assert_eq!(ch3.compose_fractions(&t01, &t12, true).unwrap(), expect);
    assert_eq!(ch3.compose_fractions(&t01, &t12, false).unwrap(), expect);
    assert!(ch3.compose_fractions(&t12, &t01, true).is_err());

    for name in POSITIVE {
        let f = fc(name);
        let c = f.base();
        let arrows = enumerate_three_arrows(f.dd());
        for t in &arrows {
            let id = c.identity(t.target(c));
            let k = f.class_of(t).unwrap();
            assert_eq!(f.compose_fractions(t, &ThreeArrow::new(id, id, id), true).unwrap(), k);
        }
        // [b1/f1/1][1/f2/a2] = [b1/f1 f2/a2].
        for t1 in arrows.iter().filter(|t| c.is_identity(t.a)) {
            for t2 in arrows.iter().filter(|t| c.is_identity(t.b) && t.source(c) == t1.target(c)) {
                let direct = ThreeArrow::new(t1.b, c.then(t1.f, t2.f), t2.a);
                assert_eq!(f.compose_fractions(t1, t2, true).unwrap(), f.class_of(&direct).unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn strict_and_lax_agree_on_every_pair() {
    for name in POSITIVE {
        let f = fc(name);
        let c = f.base();
        let arrows = enumerate_three_arrows(f.dd());
        for t1 in &arrows {
            for t2 in arrows.iter().filter(|t| t.source(c) == t1.target(c)) {
                let strict = f.compose_fractions(t1, t2, true).unwrap();
                assert_eq!(f.compose_fractions(t1, t2, false).unwrap(), strict, "{name}");
                let k1 = f.class_of(t1).unwrap();
                let k2 = f.class_of(t2).unwrap();
                assert_eq!(f.as_category.then(k1, k2), strict, "{name}");
            }
        }
    }
}

#[test]
fn choice_independence_on_ch3_and_dia() {
    for name in ["CH3", "DIA"] {
        let f = fc(name);
        let c = f.base();
        let arrows = enumerate_three_arrows(f.dd());
        for t1 in &arrows {
            for t2 in arrows.iter().filter(|t| t.source(c) == t1.target(c)) {
                let expect = f.compose_fractions(t1, t2, true).unwrap();
                let strict = all_strict_composites(f.dd(), t1, t2).unwrap();
                let lax = all_lax_composites(f.dd(), t1, t2).unwrap();
                assert!(!strict.is_empty() && !lax.is_empty());
                for t in strict.iter().chain(&lax) {
                    assert_eq!(f.class_of(t).unwrap(), expect, "{name}");
                }
            }
        }
    }
}

#[test]
fn inverse_examples() {
    let walk = fc("WALK");
    let c = walk.base();
    let fm = c.lookup_mor("f").unwrap();
    let inv = walk.inverse_of_denominator(fm).unwrap();
    assert_eq!(inv, walk.class_of(&arrow(c, "f,1_X,1_X")).unwrap());
    let (x, y) = (c.lookup_obj("X").unwrap(), c.lookup_obj("Y").unwrap());
    assert_eq!(walk.as_category.hom(y, x), [inv]);
    let one = c.lookup_mor("1_X").unwrap();
    assert_eq!(walk.inverse_of_denominator(one).unwrap(), walk.identity_class(x));

    let ch3 = fc("CH3");
    let c = ch3.base();
    let inv = ch3.inverse_of_denominator(c.lookup_mor("m_0_1").unwrap()).unwrap();
    let (o0, o1) = (c.lookup_obj("0").unwrap(), c.lookup_obj("1").unwrap());
    assert_eq!(ch3.as_category.hom(o1, o0), [inv]);
    assert!(ch3.inverse_of_denominator(c.lookup_mor("m_1_2").unwrap()).is_err());
}

#[test]
fn invert_class_examples() {
    let walk = fc("WALK");
    let c = walk.base();
    let inv = walk.invert_class(&arrow(c, "f,1_X,1_X")).unwrap();
    assert_eq!(inv, walk.class_of(&arrow(c, "1_X,f,1_Y")).unwrap());
    for name in POSITIVE {
        let f = fc(name);
        let c = f.base();
        for d in f.dd().members(Which::D) {
            let t = ThreeArrow::of_morphism(c, d);
            assert_eq!(f.invert_class(&t).unwrap(), f.inverse_of_denominator(d).unwrap());
        }
        for t in enumerate_three_arrows(f.dd()).iter().filter(|t| f.dd().is_den(t.f)) {
            let inv = f.invert_class(t).unwrap();
            let fr = &f.as_category;
            assert_eq!((fr.src(inv), fr.tgt(inv)), (t.target(c), t.source(c)));
        }
    }
    let ch3 = fc("CH3");
    assert!(ch3.invert_class(&arrow(ch3.base(), "i_1,m_1_2,i_2")).is_err());
}

#[test]
fn splitting_on_every_arrow() {
    for name in POSITIVE {
        let f = fc(name);
        for t in enumerate_three_arrows(f.dd()) {
            assert_eq!(f.split(&t).unwrap(), f.class_of(&t).unwrap(), "{name}");
        }
    }
}

#[test]
fn induced_functor_of_l_is_identity() {
    for name in POSITIVE {
        let f = fc(name);
        let hat = induced_functor(&f, &f.localisation, &f.as_category, true).unwrap();
        assert_eq!(hat, FunctorTable::identity(&f.as_category), "{name}");
    }
}

#[test]
fn induced_functor_to_terminal_is_constant() {
    let f = fc("CH3");
    let term = FinCategory::from_table(&["*"], &[("1", "*", "*")], &[("*", "1")], &[("1", "1", "1")]).unwrap();
    let to_term = FunctorTable {
        obj_map: vec![unifrac::Obj(0); 3],
        mor_map: vec![Mor(0); 6],
    };
    let hat = induced_functor(&f, &to_term, &term, true).unwrap();
    assert!(hat.mor_map.iter().all(|&m| m == Mor(0)));
}

/// Objects `a`, `b`; `s` an involution on `a`; a single `h: a → b`.
fn involution_target() -> FinCategory {
    FinCategory::from_table(
        &["a", "b"],
        &[("1_a", "a", "a"), ("s", "a", "a"), ("1_b", "b", "b"), ("h", "a", "b")],
        &[("a", "1_a"), ("b", "1_b")],
        &[
            ("1_a", "1_a", "1_a"),
            ("1_a", "s", "s"),
            ("s", "1_a", "s"),
            ("s", "s", "1_a"),
            ("1_a", "h", "h"),
            ("s", "h", "h"),
            ("h", "1_b", "h"),
            ("1_b", "1_b", "1_b"),
        ],
    )
    .unwrap()
}

fn ch3_collapse(target: &FinCategory, on_01: &str) -> FunctorTable {
    let src = make_named("CH3").unwrap().dd.base;
    FunctorTable::from_names(
        &src,
        target,
        &[("0", "a"), ("1", "a"), ("2", "b")],
        &[
            ("i_0", "1_a"),
            ("i_1", "1_a"),
            ("i_2", "1_b"),
            ("m_0_1", on_01),
            ("m_0_2", "h"),
            ("m_1_2", "h"),
        ],
    )
    .unwrap()
}

#[test]
fn induced_functor_through_a_collapse() {
    let f = fc("CH3");
    let chain2 = make_poset("C2", &["a", "b"], &[("a", "a"), ("b", "b"), ("a", "b")], &Selector::All).unwrap();
    let target = chain2.dd.base;
    let src = f.base();
    let collapse = FunctorTable::from_names(
        src,
        &target,
        &[("0", "a"), ("1", "a"), ("2", "b")],
        &[
            ("i_0", "i_a"),
            ("i_1", "i_a"),
            ("i_2", "i_b"),
            ("m_0_1", "i_a"),
            ("m_0_2", "m_a_b"),
            ("m_1_2", "m_a_b"),
        ],
    )
    .unwrap();
    let hat = induced_functor(&f, &collapse, &target, true).unwrap();
    assert!(validate_functor(&hat, &f.as_category, &target).is_ok());
}

#[test]
fn induced_functor_rejects_non_inverting() {
    let f = fc("CH3");
    let target = involution_target();
    // m_0_1 ↦ h would not even be well-typed; use a functor into a 3-chain that keeps 0 < 1.
    let chain = make_named("CH3").unwrap().dd.base;
    let err = induced_functor(&f, &FunctorTable::identity(&chain), &chain, true).unwrap_err();
    assert!(err.to_string().contains("m_0_1"), "{err}");
    assert!(induced_functor(&f, &ch3_collapse(&target, "s"), &target, true).is_ok());
}

#[test]
fn induced_functor_is_unique() {
    let f = fc("CH3");
    let target = involution_target();
    let functor = ch3_collapse(&target, "s");
    let hat = induced_functor(&f, &functor, &target, true).unwrap();
    for k in f.as_category.morphisms() {
        let current = hat.on_mor(k);
        for &other in target.hom(target.src(current), target.tgt(current)) {
            if other == current {
                continue;
            }
            let mut g = hat.clone();
            g.mor_map[k.index()] = other;
            let is_functor = validate_functor(&g, &f.as_category, &target).is_ok();
            assert!(!is_functor || f.localisation.then(&g) != functor);
        }
    }
}

#[test]
fn induced_transformations() {
    let f = fc("CH3");
    let target = involution_target();
    let functor = ch3_collapse(&target, "s");
    let a = target.lookup_mor("s").unwrap();
    let one_b = target.lookup_mor("1_b").unwrap();
    let one_a = target.lookup_mor("1_a").unwrap();
    let alpha = vec![a, a, one_b];
    assert_eq!(induced_transformation(&f, &functor, &functor, &target, &alpha).unwrap(), alpha);
    let id = vec![one_a, one_a, one_b];
    assert_eq!(induced_transformation(&f, &functor, &functor, &target, &id).unwrap(), id);
    // s at 0 only is not natural along m_0_1.
    let bad = vec![a, one_a, one_b];
    assert!(induced_transformation(&f, &functor, &functor, &target, &bad).is_err());

    let ids: Vec<Mor> = f.base().objects().map(|x| f.identity_class(x)).collect();
    let out = induced_transformation(&f, &f.localisation, &f.localisation, &f.as_category, &ids).unwrap();
    assert_eq!(out, ids);
}

#[test]
fn functor_on_fractions() {
    let ch3 = fc("CH3");
    let id = FunctorTable::identity(ch3.base());
    let fr_id = induced_functor_on_fractions(&id, &ch3, &ch3).unwrap();
    assert_eq!(fr_id, FunctorTable::identity(&ch3.as_category));

    let objs = [ch3.base().lookup_obj("0").unwrap(), ch3.base().lookup_obj("1").unwrap()];
    let (sub, inc) = ch3.dd().restrict(&objs);
    let sub_fc = build_fraction_category(sub).unwrap();
    assert_eq!(sub_fc.num_classes(), 4);
    let fr_inc = induced_functor_on_fractions(&inc, &sub_fc, &ch3).unwrap();
    assert!(validate_functor(&fr_inc, &sub_fc.as_category, &ch3.as_category).is_ok());

    // A relabelled copy of CH3.
    let leq = [("x", "x"), ("y", "y"), ("z", "z"), ("x", "y"), ("x", "z"), ("y", "z")];
    let sel = Selector::Listed(["i_x", "i_y", "i_z", "m_x_y"].map(String::from).to_vec());
    let copy = make_poset("copy", &["x", "y", "z"], &leq, &sel).unwrap();
    let copy_fc = build_fraction_category(copy.dd.clone()).unwrap();
    let iso = FunctorTable::from_names(
        ch3.base(),
        &copy.dd.base,
        &[("0", "x"), ("1", "y"), ("2", "z")],
        &[
            ("i_0", "i_x"),
            ("i_1", "i_y"),
            ("i_2", "i_z"),
            ("m_0_1", "m_x_y"),
            ("m_0_2", "m_x_z"),
            ("m_1_2", "m_y_z"),
        ],
    )
    .unwrap();
    let fr_iso = induced_functor_on_fractions(&iso, &ch3, &copy_fc).unwrap();
    let mut images = fr_iso.mor_map.clone();
    images.sort();
    images.dedup();
    assert_eq!(images.len(), ch3.num_classes());

    // Shifting along the chain sends m_0_1 outside D.
    let shift = FunctorTable::from_names(
        ch3.base(),
        ch3.base(),
        &[("0", "1"), ("1", "2"), ("2", "2")],
        &[
            ("i_0", "i_1"),
            ("i_1", "i_2"),
            ("i_2", "i_2"),
            ("m_0_1", "m_1_2"),
            ("m_0_2", "m_1_2"),
            ("m_1_2", "i_2"),
        ],
    )
    .unwrap();
    assert!(induced_functor_on_fractions(&shift, &ch3, &ch3).is_err());
}

#[test]
fn isomorphisms_and_saturation() {
    let dia = fc("DIA");
    assert_eq!(dia.classify_isomorphisms().unwrap().len(), 16);
    let ch3 = fc("CH3");
    let isos = ch3.classify_isomorphisms().unwrap();
    // Identities of 0, 1, 2 and the two classes between 0 and 1.
    assert_eq!(isos.len(), 5);
    assert_eq!(isos, ch3.denominator_classes());
    assert!(ch3.is_saturated());
    let par = fc("PAR");
    let isos = par.classify_isomorphisms().unwrap();
    assert!(isos.iter().all(|&m| par.base().is_identity(par.representative(m).f)));
    assert_eq!(isos.len(), 2);
    assert!(par.is_saturated());
}

#[test]
fn saturation_matches_weak_saturation() {
    use unifrac::denominators::{classify_saturation, SaturationLevel};
    for name in POSITIVE {
        let f = fc(name);
        let weak = classify_saturation(f.dd()) == SaturationLevel::WeaklySaturated;
        assert_eq!(f.is_saturated(), weak, "{name}");
    }
}

#[test]
fn st_independence() {
    let dia = make_named("DIA").unwrap().dd;
    assert!(st_independence_check(&dia, &make_named("DIA-B").unwrap().dd).unwrap());
    let ch3 = make_named("CH3").unwrap().dd;
    assert!(st_independence_check(&ch3, &make_named("CH3-B").unwrap().dd).unwrap());
    assert!(st_independence_check(&ch3, &ch3).unwrap());
    assert!(st_independence_check(&ch3, &dia).is_err());
}

#[test]
fn subcategory_equivalences() {
    let dia_b = make_named("DIA-B").unwrap().dd;
    let top = [dia_b.base.lookup_obj("top").unwrap()];
    let report = subcategory_equivalence(&dia_b, &top, Resolution::T).unwrap();
    assert!(report.hypothesis_holds() && report.is_equivalence(), "{report}");

    let ch3 = make_named("CH3").unwrap().dd;
    let u = [ch3.base.lookup_obj("0").unwrap(), ch3.base.lookup_obj("1").unwrap()];
    let report = subcategory_equivalence(&ch3, &u, Resolution::S).unwrap();
    assert!(!report.hypothesis_holds());
    assert_eq!(report.unresolved, ["2"]);
    assert_eq!((report.full, report.faithful, report.dense), (Some(true), Some(true), Some(false)));

    let all: Vec<_> = ch3.base.objects().collect();
    for variant in [Resolution::S, Resolution::T] {
        let report = subcategory_equivalence(&ch3, &all, variant).unwrap();
        assert!(report.hypothesis_holds() && report.is_equivalence());
    }
    assert!(subcategory_equivalence(&ch3, &[], Resolution::S).is_err());
}
