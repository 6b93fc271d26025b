mod common;

use reslat_core::io::serialize_lattice_compact;
use reslat_core::{parse_lattice, serialize_lattice};

#[test]
fn canonical_json_round_trips() {
    for l in common::corpus(6) {
        let text = serialize_lattice(&l);
        let back = parse_lattice(&text).unwrap_or_else(|e| panic!("{}: {e}", l.name()));
        assert_eq!(back.raw_tables(), l.raw_tables(), "{}", l.name());
        assert_eq!(back.name(), l.name());
        assert_eq!(serialize_lattice(&back), text, "{} is not a fixed point", l.name());
        assert!(text.ends_with('\n') && !text.contains('\r'));

        let compact = serialize_lattice_compact(&l);
        assert!(!compact.contains('\n'));
        assert_eq!(parse_lattice(&compact).unwrap().raw_tables(), l.raw_tables());
    }
}

#[test]
fn bundled_files_are_canonical() {
    for text in [reslat_core::bundled::A6_JSON, reslat_core::bundled::A8_JSON] {
        let l = parse_lattice(text).unwrap();
        assert_eq!(serialize_lattice(&l), text);
    }
}
