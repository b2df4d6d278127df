use geodstab::catalog::{
    BlockRecord, CatalogEntry, CatalogFile, CharacterRecord, CongruenceRecord, EmbeddingRecord, ExpectedVerdict,
    WeightRecord,
};
use geodstab::{validate, Catalog, Rational};
use geodstab_core::Q;
use proptest::prelude::*;

fn reload(c: &Catalog) -> Catalog {
    Catalog::parse(&c.to_toml()).expect("serialized catalog parses")
}

#[test]
fn bundled_round_trip_is_identity() {
    let once = Catalog::bundled();
    let twice = reload(&once);
    assert_eq!(once.file, twice.file);
    assert_eq!(reload(&twice).file, twice.file);
    assert_eq!(validate(&once), validate(&twice));
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i128..=6, 1i128..=4).prop_map(|(n, d)| Rational(Q::new(n, d)))
}

/// An SO(2) in SO(3)-style embedding with a free half-integral projection
/// coefficient and an entry that uses it.
fn file() -> impl Strategy<Value = CatalogFile> {
    (
        "[a-z][a-z0-9-]{0,8}",
        prop_oneof![Just(Q::new(1, 2)), Just(Q::new(1, 1)), Just(Q::new(3, 2))],
        proptest::collection::vec(rational(), 1),
        0i64..2,
        any::<bool>(),
        1u64..5,
        "[ -~]{0,20}",
    )
        .prop_map(|(name, coeff, char_coeff, residue, stable, dim, description)| {
            let embedding = EmbeddingRecord {
                name: format!("emb-{name}"),
                description: description.clone(),
                source: vec!["A1".into()],
                source_abelian: 0,
                target: vec![],
                target_abelian: 1,
                projection: vec![vec![Rational(coeff)]],
                casimir_scales: vec![],
                charge_scales: vec![],
                charge_steps: vec![],
                congruences: vec![CongruenceRecord { coefficients: vec![Rational::from(1)], modulus: 2 }],
            };
            let entry = CatalogEntry {
                name: format!("entry-{name}"),
                description,
                provenance: "generated".into(),
                expected_verdict: if stable { ExpectedVerdict::Stable } else { ExpectedVerdict::Unstable },
                machine_checked: false,
                parameters: [("n".to_string(), dim as i64)].into_iter().collect(),
                expected_index: None,
                expected_nullity: Some(dim),
                expected_killing_nullity: None,
                kn_embedding: Some(format!("emb-{name}")),
                rank_n: 1,
                rank_m: 1,
                ambient_is_group: stable,
                subgroup: false,
                ambient_is_bottom: false,
                centralizer_discrete: true,
                euler_plus: Some(dim),
                blocks: vec![BlockRecord {
                    kn_module: WeightRecord { labels: vec![], charges: vec![Rational::from(0)] },
                    ambient_module: Some(WeightRecord { labels: vec![vec![2]], charges: vec![] }),
                    flat: None,
                    ambient_dim: dim,
                    real_form_factor: 1,
                    character: Some(CharacterRecord { coefficients: char_coeff, residue }),
                }],
            };
            CatalogFile { embeddings: vec![embedding], entries: vec![entry], groupings: vec![] }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_round_trip_is_identity(f in file()) {
        let cat = Catalog::from_file(f.clone()).unwrap();
        prop_assert_eq!(&cat.file, &f);
        let again = reload(&cat);
        prop_assert_eq!(&again.file, &f);
    }
}
