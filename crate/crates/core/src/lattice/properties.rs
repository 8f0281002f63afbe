use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{CatalogEntry, FiniteLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementProperty {
    Neutral,
    Standard,
    Costandard,
    Distributive,
    Codistributive,
    Modular,
    LowerModular,
    UpperModular,
    Cancellable,
}

impl ElementProperty {
    pub const ALL: [ElementProperty; 9] = [
        ElementProperty::Neutral,
        ElementProperty::Standard,
        ElementProperty::Costandard,
        ElementProperty::Distributive,
        ElementProperty::Codistributive,
        ElementProperty::Modular,
        ElementProperty::LowerModular,
        ElementProperty::UpperModular,
        ElementProperty::Cancellable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ElementProperty::Neutral => "neutral",
            ElementProperty::Standard => "standard",
            ElementProperty::Costandard => "costandard",
            ElementProperty::Distributive => "distributive",
            ElementProperty::Codistributive => "codistributive",
            ElementProperty::Modular => "modular",
            ElementProperty::LowerModular => "lower_modular",
            ElementProperty::UpperModular => "upper_modular",
            ElementProperty::Cancellable => "cancellable",
        }
    }

    /// The order-dual property.
    pub fn dual(self) -> ElementProperty {
        match self {
            ElementProperty::Standard => ElementProperty::Costandard,
            ElementProperty::Costandard => ElementProperty::Standard,
            ElementProperty::Distributive => ElementProperty::Codistributive,
            ElementProperty::Codistributive => ElementProperty::Distributive,
            ElementProperty::LowerModular => ElementProperty::UpperModular,
            ElementProperty::UpperModular => ElementProperty::LowerModular,
            p => p,
        }
    }

    fn is_dual_form(self) -> bool {
        matches!(self, ElementProperty::Costandard | ElementProperty::Codistributive | ElementProperty::UpperModular)
    }
}

impl fmt::Display for ElementProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ElementProperty {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        ElementProperty::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .ok_or_else(|| format!("unknown element property '{s}'"))
    }
}

/// The primal definitions, each quantified over all `y, z`.
fn primal_holds(l: &FiniteLattice, x: usize, p: ElementProperty) -> bool {
    let (m, j) = (|a, b| l.meet(a, b), |a, b| l.join(a, b));
    let all = |f: &dyn Fn(usize, usize) -> bool| l.elements().all(|y| l.elements().all(|z| f(y, z)));
    match p {
        ElementProperty::Neutral => all(&|y, z| m(m(j(x, y), j(y, z)), j(z, x)) == j(j(m(x, y), m(y, z)), m(z, x))),
        ElementProperty::Standard => all(&|y, z| m(j(x, y), z) == j(m(x, z), m(y, z))),
        ElementProperty::Distributive => all(&|y, z| j(x, m(y, z)) == m(j(x, y), j(x, z))),
        ElementProperty::Modular => all(&|y, z| !l.leq(y, z) || m(j(x, y), z) == j(m(x, z), y)),
        ElementProperty::Cancellable => all(&|y, z| !(j(x, y) == j(x, z) && m(x, y) == m(x, z)) || y == z),
        ElementProperty::LowerModular => all(&|y, z| !l.leq(x, y) || j(x, m(y, z)) == m(y, j(x, z))),
        _ => unreachable!("dual forms are evaluated on the dual lattice"),
    }
}

fn holds_with_dual(l: &FiniteLattice, dual: &FiniteLattice, x: usize, p: ElementProperty) -> bool {
    if p.is_dual_form() {
        primal_holds(dual, x, p.dual())
    } else {
        primal_holds(l, x, p)
    }
}

/// Brute-force evaluation of `p` at `x`. Costandard, codistributive and
/// upper-modular are evaluated as their primal counterparts on the dual.
pub fn has_property(l: &FiniteLattice, x: usize, p: ElementProperty) -> bool {
    if p.is_dual_form() {
        primal_holds(&l.dual(), x, p.dual())
    } else {
        primal_holds(l, x, p)
    }
}

pub fn elements_with(l: &FiniteLattice, p: ElementProperty) -> BTreeSet<usize> {
    let dual = l.dual();
    l.elements().filter(|&x| holds_with_dual(l, &dual, x, p)).collect()
}

/// Element-wise implications between the special properties.
pub const IMPLICATIONS: [(ElementProperty, ElementProperty); 9] = [
    (ElementProperty::Neutral, ElementProperty::Standard),
    (ElementProperty::Neutral, ElementProperty::Costandard),
    (ElementProperty::Standard, ElementProperty::Cancellable),
    (ElementProperty::Costandard, ElementProperty::Cancellable),
    (ElementProperty::Cancellable, ElementProperty::Modular),
    (ElementProperty::Distributive, ElementProperty::LowerModular),
    (ElementProperty::Codistributive, ElementProperty::UpperModular),
    (ElementProperty::Standard, ElementProperty::Distributive),
    (ElementProperty::Costandard, ElementProperty::Codistributive),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicationViolation {
    pub element: usize,
    pub has: ElementProperty,
    pub lacks: ElementProperty,
}

/// Every element that has the premise of one of [`IMPLICATIONS`] but not
/// its conclusion. Empty for every lattice.
pub fn check_implications(l: &FiniteLattice) -> Vec<ImplicationViolation> {
    let dual = l.dual();
    let mut out = Vec::new();
    for x in l.elements() {
        let table: Vec<bool> = ElementProperty::ALL.iter().map(|&p| holds_with_dual(l, &dual, x, p)).collect();
        let get = |p: ElementProperty| table[ElementProperty::ALL.iter().position(|&q| q == p).unwrap()];
        for &(has, lacks) in &IMPLICATIONS {
            if get(has) && !get(lacks) {
                out.push(ImplicationViolation { element: x, has, lacks });
            }
        }
    }
    out
}

/// First catalog lattice and element (in catalog order) having `has` but
/// not `lacks`.
pub fn search_element_counterexample(
    catalog: &[CatalogEntry],
    has: ElementProperty,
    lacks: ElementProperty,
) -> Option<(&CatalogEntry, usize)> {
    catalog.iter().find_map(|entry| {
        let l = &entry.lattice;
        let dual = l.dual();
        l.elements()
            .find(|&x| holds_with_dual(l, &dual, x, has) && !holds_with_dual(l, &dual, x, lacks))
            .map(|x| (entry, x))
    })
}
