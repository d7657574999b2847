use laxlab_core::catalog::{self, Kind, Params};
use std::collections::BTreeSet;

fn manifest() -> Vec<(String, String, String)> {
    include_str!("../catalog.manifest")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            assert_eq!(f.len(), 3, "bad manifest line `{l}`");
            (f[0].to_string(), f[1].to_string(), f[2].to_string())
        })
        .collect()
}

#[test]
fn keys_match_the_manifest_exactly_once() {
    let listed = manifest();
    let keys: Vec<&str> = catalog::keys();
    let unique: BTreeSet<&str> = keys.iter().copied().collect();
    assert_eq!(unique.len(), keys.len(), "duplicate catalog key");
    let names: Vec<&str> = listed.iter().map(|(k, _, _)| k.as_str()).collect();
    assert_eq!(names, keys);
}

#[test]
fn kinds_and_transcriptions_match() {
    for (key, kind, transcription) in manifest() {
        let e = catalog::entry(&key).unwrap();
        let k = match e.kind {
            Kind::Pair => "pair",
            Kind::Target => "target",
            Kind::Matrices => "matrices",
        };
        assert_eq!(k, kind, "{key}");
        assert_eq!(e.transcription.label(), transcription, "{key}");
        assert_eq!(key.contains("-derived"), transcription == "derived", "{key}");
    }
}

#[test]
fn every_entry_builds_with_its_required_parameters() {
    for e in catalog::entries() {
        let mut params = Params::none();
        for r in e.required {
            params = params.value(r, laxlab_core::ncexpr::GaussRat::int(1));
        }
        assert!(catalog::build(e.key, &params).is_ok(), "{}", e.key);
    }
}
