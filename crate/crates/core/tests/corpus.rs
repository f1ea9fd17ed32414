use latres_core::catalog;
use latres_core::cohomology::tate;
use latres_core::corpus::{self, Corpus};
use latres_core::reductive::{flasque_resolution, pi1};
use latres_core::rootdatum::GroupDatum;
use latres_core::schema::{canonical_json, parse_as, DatumDoc, Document, GroupDoc, Ref};
use latres_core::{Config, Error, FiniteGroup};

#[test]
fn corpus_has_the_advertised_entries() {
    let names = corpus::list();
    assert!(names.len() >= 12, "{}", names.len());
    for n in [
        "pgl2",
        "seq.gln-pgln",
        "sl3",
        "gl4",
        "sp4",
        "so5",
        "su3.qs",
        "norm-one.v4",
    ] {
        assert!(names.contains(&n), "{n}");
    }
    assert!(matches!(corpus::get("pgl2").unwrap(), Document::Datum(_)));
    assert!(matches!(corpus::get("seq.gln-pgln").unwrap(), Document::Sequence(_)));
    assert!(matches!(corpus::get("no-such-entry"), Err(Error::Input(_))));
}

#[test]
fn every_document_round_trips() {
    let cfg = Config::default();
    for name in corpus::list() {
        let text = corpus::text(name).unwrap();
        let doc = corpus::get(name).unwrap();
        corpus::validate(&doc, &cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(corpus::canonical(&doc).unwrap(), text, "{name}");
    }
}

#[test]
fn at_least_ten_data_over_small_groups() {
    let cfg = Config::default();
    let data = corpus::data(&cfg).unwrap();
    assert!(data.len() >= 10);
    assert!(data.iter().all(|(_, gd)| gd.group().order() <= 6));
}

fn same_cohomology(a: &GroupDatum, b: &GroupDatum, cfg: &Config) -> bool {
    let lat = a.group().subgroups(cfg).unwrap();
    lat.representatives()
        .iter()
        .all(|h| (-1..=2).all(|i| tate(h, a.characters(), i, cfg).unwrap() == tate(h, b.characters(), i, cfg).unwrap()))
}

#[test]
fn documents_agree_with_the_catalog() {
    let cfg = Config::default();
    let v4 = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    let pairs = [
        ("norm-one.z3", catalog::norm_one_torus(&FiniteGroup::cyclic(3))),
        ("norm-one.v4", catalog::norm_one_torus(&v4)),
        ("sign-torus", catalog::sign_torus()),
        ("u2", catalog::u2()),
        ("su3.qs", catalog::quasi_split_su3()),
    ];
    for (name, gd) in pairs {
        let doc = corpus::datum(name, &cfg).unwrap();
        assert!(same_cohomology(&doc, &gd, &cfg), "{name}");
        assert_eq!(doc.roots().len(), gd.roots().len(), "{name}");
    }
    for n in 2..=4 {
        let inv = |gd: &GroupDatum| {
            pi1(&flasque_resolution(gd, &cfg).unwrap())
                .unwrap()
                .module
                .invariants()
                .clone()
        };
        assert_eq!(
            inv(&corpus::datum(&format!("pgl{n}"), &cfg).unwrap()),
            inv(&catalog::pgl(n))
        );
        assert_eq!(
            inv(&corpus::datum(&format!("sl{n}"), &cfg).unwrap()),
            inv(&catalog::sl(n))
        );
    }
}

#[test]
fn inline_and_named_references_agree() {
    let cfg = Config::default();
    let text = r#"{"group": {"kind": "table", "mul": [[0, 1], [1, 0]]}, "X_rank": 1, "action": {"1": [[-1]]}}"#;
    let inline: DatumDoc = parse_as(text, "datum").unwrap();
    let gd = inline.build(&Corpus, &cfg).unwrap();
    let named = corpus::datum("sign-torus", &cfg).unwrap();
    assert!(same_cohomology(&gd, &named, &cfg));
    let with_name = DatumDoc {
        group: Ref::Name("z2".into()),
        ..inline
    };
    assert_eq!(canonical_json(&with_name).unwrap().matches("\"z2\"").count(), 1);
}

#[test]
fn malformed_documents_are_input_errors() {
    let cfg = Config::default();
    assert!(matches!(parse_as::<GroupDoc>("{", "group"), Err(Error::Input(_))));
    assert!(matches!(
        parse_as::<GroupDoc>(r#"{"kind": "cyclic", "n": 3}"#, "group"),
        Err(Error::Input(_))
    ));
    let bad_pairing = r#"{"X_rank": 1, "roots": [[1], [-1]], "coroots": [[1], [-1]]}"#;
    let doc: DatumDoc = parse_as(bad_pairing, "datum").unwrap();
    assert!(matches!(doc.build(&Corpus, &cfg), Err(Error::AxiomViolation { .. })));
    let wrong_kind = r#"{"X_rank": 1, "group": "sl2"}"#;
    let doc: DatumDoc = parse_as(wrong_kind, "datum").unwrap();
    assert!(matches!(doc.build(&Corpus, &cfg), Err(Error::Input(_))));
}
