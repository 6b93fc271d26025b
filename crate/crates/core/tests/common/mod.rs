use reslat_core::{bundled, enumerate_residuated, EnumConfig, ResiduatedLattice};

/// Every lattice of order at most `n`, plus the named examples.
pub fn corpus(n: usize) -> Vec<ResiduatedLattice> {
    let config = EnumConfig::default();
    let mut out: Vec<ResiduatedLattice> = (1..=n)
        .flat_map(|k| enumerate_residuated(k, &config).expect("within cap"))
        .collect();
    out.extend([
        bundled::a6(),
        bundled::a8(),
        bundled::boolean4(),
        bundled::godel_chain(5),
        bundled::lukasiewicz_chain(5),
    ]);
    out
}
