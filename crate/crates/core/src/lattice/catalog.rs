use super::FiniteLattice;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub lattice: FiniteLattice,
}

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> FiniteLattice {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(String, String)> = (1..n).map(|i| (labels[i - 1].clone(), labels[i].clone())).collect();
    FiniteLattice::build(&labels, &covers).expect("chain")
}

/// The diamond: bottom `0`, atoms `p`, `q`, `r`, top `1`.
pub fn m3() -> FiniteLattice {
    FiniteLattice::build(
        &["0", "p", "q", "r", "1"],
        &[("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
    )
    .expect("M3")
}

/// The pentagon: `0 < a < c < 1` and `0 < b < 1`.
pub fn n5() -> FiniteLattice {
    FiniteLattice::build(&["0", "a", "b", "c", "1"], &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])
        .expect("N5")
}

const MAX_PRODUCT: usize = 36;

/// Chains of 1 to 7 elements, M3, N5, the Boolean lattices B2 and B3, M3 and
/// N5 with a new bottom, a new top, or both, and every product of two of the
/// non-trivial ones with at most 36 elements.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let entry = |name: String, lattice: FiniteLattice| CatalogEntry { name, lattice };
    let mut base = Vec::new();
    for n in 1..=7 {
        base.push(entry(format!("chain{n}"), chain(n)));
    }
    let b2 = chain(2).product(&chain(2));
    let b3 = b2.product(&chain(2));
    base.push(entry("M3".into(), m3()));
    base.push(entry("N5".into(), n5()));
    base.push(entry("B2".into(), b2));
    base.push(entry("B3".into(), b3));
    for (name, l) in [("M3", m3()), ("N5", n5())] {
        base.push(entry(format!("{name}+bottom"), l.with_new_bottom("z")));
        base.push(entry(format!("{name}+top"), l.with_new_top("t")));
        base.push(entry(format!("{name}+both"), l.with_new_bottom("z").with_new_top("t")));
    }
    let factors: Vec<&CatalogEntry> = base.iter().filter(|e| e.lattice.len() > 1).collect();
    let mut products = Vec::new();
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            if a.lattice.len() * b.lattice.len() <= MAX_PRODUCT {
                products.push(entry(format!("{}x{}", a.name, b.name), a.lattice.product(&b.lattice)));
            }
        }
    }
    base.extend(products);
    base
}
