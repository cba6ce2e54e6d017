use unifrac::denominators::*;
use unifrac::instances::{antichain, chain, make_monoid, make_named, Selector, NAMED, POSITIVE};
use unifrac::{DenominatorData, FunctorTable, Mor, Which};

fn mors(dd: &DenominatorData, names: &[&str]) -> Vec<Mor> {
    names.iter().map(|n| dd.base.lookup_mor(n).unwrap()).collect()
}

fn listed(names: &[&str]) -> Selector {
    Selector::Listed(names.iter().map(|s| s.to_string()).collect())
}

#[test]
fn multiplicativity_examples() {
    let ch3 = make_named("CH3").unwrap().dd;
    assert!(is_multiplicative(&ch3, Which::D));
    let empty = ch3.with_st(&[], &[]).unwrap();
    assert!(matches!(
        multiplicative_counterexample(&empty, Which::S),
        Some(Counterexample::MissingIdentity(_))
    ));
    let walk = make_named("WALK").unwrap().dd;
    assert!(is_multiplicative(&walk, Which::D));
}

#[test]
fn two_of_three_examples() {
    assert!(is_two_of_three(&make_named("CH3").unwrap().dd));
    assert!(is_two_of_three(&make_named("DIA").unwrap().dd));
    let gap = chain(3, &listed(&["i_0", "i_1", "i_2", "m_0_1", "m_1_2"])).unwrap().dd;
    let c = &gap.base;
    match two_of_three_counterexample(&gap) {
        Some(Counterexample::TwoOfThree { f, g, fg }) => {
            let names = [c.mor_name(f), c.mor_name(g), c.mor_name(fg)];
            assert_eq!(names, ["m_0_1", "m_1_2", "m_0_2"]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn two_of_six_examples() {
    assert!(is_two_of_six(&make_named("CH3").unwrap().dd));
    assert!(is_two_of_six(&make_named("DIA").unwrap().dd));
    // Units only: 3·3 = 1 lies in D although 3 does not.
    let z4 = make_named("Z4").unwrap();
    let only_one = DenominatorData::uniform(z4.dd.base.clone(), &mors(&z4.dd, &["1"])).unwrap();
    match two_of_six_counterexample(&only_one) {
        Some(Counterexample::TwoOfSix { f, g, h }) => {
            let c = &only_one.base;
            assert_eq!([c.mor_name(f), c.mor_name(g), c.mor_name(h)], ["3", "3", "3"]);
        }
        other => panic!("{other:?}"),
    }
    assert!(is_two_of_six(&z4.dd));
}

#[test]
fn saturation_ladder() {
    assert_eq!(classify_saturation(&make_named("CH3").unwrap().dd), SaturationLevel::WeaklySaturated);
    assert_eq!(classify_saturation(&make_named("PAR").unwrap().dd), SaturationLevel::WeaklySaturated);
    let ch3 = make_named("CH3").unwrap().dd;
    let no_id = DenominatorData::uniform(ch3.base.clone(), &mors(&ch3, &["i_0", "i_1"])).unwrap();
    assert_eq!(classify_saturation(&no_id), SaturationLevel::None);
    let bad = make_named("CH3-BAD23").unwrap().dd;
    assert_eq!(classify_saturation(&bad), SaturationLevel::Multiplicative);
}

#[test]
fn saturation_is_monotone_on_every_instance() {
    for name in NAMED {
        let dd = make_named(name).unwrap().dd;
        let level = classify_saturation(&dd);
        if level >= SaturationLevel::SemiSaturated {
            assert!(is_two_of_three(&dd) && is_multiplicative(&dd, Which::D), "{name}");
        }
        if level >= SaturationLevel::Multiplicative {
            assert!(is_multiplicative(&dd, Which::D), "{name}");
        }
    }
}

#[test]
fn weak_pushout_examples() {
    let walk = make_named("WALK").unwrap().dd;
    let c = &walk.base;
    let [one_x, f] = [c.lookup_mor("1_X").unwrap(), c.lookup_mor("f").unwrap()];
    let one_y = c.lookup_mor("1_Y").unwrap();
    assert!(is_weak_pushout(c, one_x, f, f, one_y).unwrap());

    let dia = make_named("DIA").unwrap().dd;
    let c = &dia.base;
    let m = |n: &str| c.lookup_mor(n).unwrap();
    // bot ≤ a and bot ≤ b, completed at the join top.
    assert!(is_weak_pushout(c, m("m_bot_a"), m("m_bot_b"), m("m_a_top"), m("m_b_top")).unwrap());

    let idem = make_named("IDEM").unwrap().dd;
    let c = &idem.base;
    let e = c.lookup_mor("e").unwrap();
    assert!(!is_weak_pushout(c, e, e, e, e).unwrap());
    let one = c.lookup_mor("1").unwrap();
    assert!(is_weak_pushout(c, e, one, one, one).is_err());
}

#[test]
fn weak_pullback_is_dual() {
    let dia = make_named("DIA").unwrap().dd;
    let c = &dia.base;
    let m = |n: &str| c.lookup_mor(n).unwrap();
    assert!(is_weak_pullback(c, m("m_a_top"), m("m_b_top"), m("m_bot_a"), m("m_bot_b")).unwrap());
    let op = c.opposite();
    let mo = |n: &str| op.lookup_mor(n).unwrap();
    assert!(is_weak_pushout(&op, mo("m_a_top"), mo("m_b_top"), mo("m_bot_a"), mo("m_bot_b")).unwrap());
}

#[test]
fn wu_examples() {
    let walk = make_named("WALK").unwrap().dd;
    assert!(check_wu(&walk).holds());
    let par = make_named("PAR").unwrap().dd;
    assert!(check_wu(&par).holds());
    let idem = make_named("IDEM").unwrap().dd;
    let wu = check_wu(&idem);
    let c = &idem.base;
    let first = wu.failures[0];
    assert_eq!(first.0, OreKind::Pushout);
    assert_eq!((c.mor_name(first.1), c.mor_name(first.2)), ("e", "e"));
}

#[test]
fn fac_examples() {
    let ch3 = make_named("CH3").unwrap().dd;
    let fac = check_fac(&ch3);
    let c = &ch3.base;
    let w = fac.witnesses.iter().find(|w| c.mor_name(w.d) == "m_0_1").unwrap();
    assert_eq!((c.mor_name(w.i), c.mor_name(w.p)), ("m_0_1", "i_1"));
    // An S-denominator d factors as (d, 1).
    for name in POSITIVE {
        let dd = make_named(name).unwrap().dd;
        for w in check_fac(&dd).witnesses {
            if dd.is_s(w.d) {
                assert_eq!((w.i, dd.base.is_identity(w.p)), (w.d, true), "{name}");
            }
        }
    }
    let walk = make_named("WALK").unwrap().dd;
    let ids = mors(&walk, &["1_X", "1_Y"]);
    let stripped = walk.with_st(&ids, &ids).unwrap();
    assert!(!check_fac(&stripped).holds());
}

#[test]
fn axiom_suite() {
    for name in POSITIVE {
        let report = check_axioms(&make_named(name).unwrap().dd);
        assert!(report.holds(), "{name}: {:?}", report.failed());
    }
    let idem = check_axioms(&make_named("IDEM").unwrap().dd);
    assert_eq!(idem.failed(), ["(WU)"]);
    let rendered = idem.render(&make_named("IDEM").unwrap().dd.base, false);
    assert!(rendered.contains("(WU) FAIL witness i=e f=e"), "{rendered}");
    assert_eq!(check_axioms(&make_named("CH3-BAD23").unwrap().dd).failed(), ["(2 of 3)"]);
    assert_eq!(check_axioms(&make_named("PAR-F").unwrap().dd).failed(), ["(WU)"]);
}

#[test]
fn par_with_f_fails_on_f_against_g() {
    let dd = make_named("PAR-F").unwrap().dd;
    let c = &dd.base;
    let wu = check_wu(&dd);
    assert!(wu
        .failures
        .iter()
        .any(|&(k, i, f)| k == OreKind::Pushout && c.mor_name(i) == "f" && c.mor_name(f) == "g"));
}

#[test]
fn cached_witnesses_revalidate() {
    for name in POSITIVE {
        let dd = make_named(name).unwrap().dd;
        for w in check_wu(&dd).witnesses {
            assert!(w.commutes(&dd.base) && w.revalidate(&dd), "{name}");
        }
        for w in check_fac(&dd).witnesses {
            assert!(w.revalidate(&dd), "{name}");
        }
    }
}

#[test]
fn uni_fractionable_caches() {
    let uf = UniFractionable::new(make_named("WALK").unwrap().dd).unwrap();
    let c = uf.base();
    let f = c.lookup_mor("f").unwrap();
    let (i, p) = uf.factorise(f).unwrap();
    assert_eq!((c.mor_name(i), c.mor_name(p)), ("f", "1_Y"));
    assert!(UniFractionable::new(make_named("IDEM").unwrap().dd).is_err());
}

#[test]
fn invalid_base_skips_axioms() {
    use unifrac::CategoryBuilder;
    let mut b = CategoryBuilder::new();
    b.object("X").unwrap();
    b.morphism("1", "X", "X").unwrap();
    b.identity("X", "1").unwrap();
    let c = b.build().unwrap();
    let dd = DenominatorData::uniform(c, &[]).unwrap();
    let report = check_axioms(&dd);
    assert_eq!(report.failed(), ["category"]);
    assert!(report.wu.is_none());
}

#[test]
fn uf_morphisms() {
    let ch3 = make_named("CH3").unwrap().dd;
    let id = FunctorTable::identity(&ch3.base);
    assert!(validate_uf_morphism(&id, &ch3, &ch3).unwrap());

    let objs = [ch3.base.lookup_obj("0").unwrap(), ch3.base.lookup_obj("1").unwrap()];
    let (sub, inc) = ch3.restrict(&objs);
    assert!(validate_uf_morphism(&inc, &sub, &ch3).unwrap());

    // Shift 0 ↦ 1 ↦ 2 on the two-element chain: m_0_1 lands on m_1_2 ∉ D.
    let shift = FunctorTable::from_names(
        &sub.base,
        &ch3.base,
        &[("0", "1"), ("1", "2")],
        &[("i_0", "i_1"), ("i_1", "i_2"), ("m_0_1", "m_1_2")],
    )
    .unwrap();
    assert!(!validate_uf_morphism(&shift, &sub, &ch3).unwrap());
}

#[test]
fn relabelling_invariance() {
    // Reversing object order relabels every index without changing the structure.
    let rev = |n| {
        let names: Vec<String> = (0..n).rev().map(|i: usize| i.to_string()).collect();
        let objs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut leq = Vec::new();
        for x in 0..n {
            for y in x..n {
                leq.push((x.to_string(), y.to_string()));
            }
        }
        let leq: Vec<(&str, &str)> = leq.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        unifrac::instances::make_poset("rev", &objs, &leq, &listed(&["i_0", "i_1", "i_2", "m_0_1"])).unwrap()
    };
    assert!(is_uni_fractionable(&rev(3).dd));
    assert_eq!(
        check_axioms(&rev(3).dd).failed(),
        check_axioms(&make_named("CH3").unwrap().dd).failed()
    );
}

#[test]
fn discrete_and_trivial() {
    let disc = antichain(2, &Selector::Identities).unwrap();
    assert!(is_uni_fractionable(&disc.dd));
    let trivial = make_monoid("T", &["1"], &[vec![0]], &["1"]).unwrap();
    assert!(is_uni_fractionable(&trivial.dd));
}

#[test]
fn opposite_swaps_s_and_t() {
    let dd = make_named("DIA-B").unwrap().dd;
    let op = dd.opposite();
    assert_eq!(op.members(Which::S), dd.members(Which::T));
    assert!(is_uni_fractionable(&op));
}
