use std::collections::BTreeSet;

use crate::lattice::{builtin_catalog, elements_with, is_sublattice, search_element_counterexample, ElementProperty};
use crate::rewrite::{
    class_closure_verify, derive, isoterm_exact, DerivationCertificate, DerivationOutcome, Identity, Presentation,
    SearchBounds,
};
use crate::variety::{isoterm_for, satisfies, BuiltinVariety, VarietyHandle, Verdict};
use crate::word::{parse_word, Variable, Word};

use super::report::{sweep_catalog, CatalogCheck, Check, CheckStatus, Evidence, InclusionCertificate, Query, Report};
use super::{find_power_factor, find_shaped_identity, has_shape, word_set, Scenario, ShapedSearch};

fn w(text: &str) -> Word {
    parse_word(text).expect("scenario word")
}

fn ids(pairs: &[(&Word, &Word)]) -> Presentation {
    Presentation::new(pairs.iter().map(|(a, b)| Identity::new((*a).clone(), (*b).clone())))
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, description: impl Into<String>, ok: bool, evidence: Vec<Evidence>) -> bool {
        let status = if ok { CheckStatus::Verified } else { CheckStatus::Failed };
        self.push_status(description, status, evidence);
        ok
    }

    fn push_status(&mut self, description: impl Into<String>, status: CheckStatus, evidence: Vec<Evidence>) {
        let id = (self.0.len() + 1).to_string();
        self.0.push(Check { id, description: description.into(), status, evidence });
    }
}

fn class_evidence(system: &Presentation, class: &[&Word]) -> (bool, Evidence) {
    let class: BTreeSet<Word> = word_set(class.iter().copied());
    let seed = class.first().expect("non-empty class").clone();
    match class_closure_verify(&class, &seed, system) {
        Ok(v) => {
            let exact = v.is_exact();
            (exact, Evidence::ClassSet { system: system.clone(), seed, class, exact })
        }
        Err(e) => (false, Evidence::Error(e.to_string())),
    }
}

fn isoterm_evidence(system: &Presentation, word: &Word) -> (bool, Evidence) {
    match isoterm_exact(word, system) {
        Ok(isoterm) => (isoterm, Evidence::Isoterm { system: system.clone(), word: word.clone(), isoterm }),
        Err(e) => (false, Evidence::Error(e.to_string())),
    }
}

fn derive_evidence(system: &Presentation, lhs: &Word, rhs: &Word) -> (Option<DerivationCertificate>, Evidence) {
    let bounds = SearchBounds::default_for(system, &[lhs, rhs]);
    match derive(system, lhs, rhs, &bounds) {
        Ok(out) => {
            let certificate = match out {
                DerivationOutcome::Proved(c) => Some(c),
                DerivationOutcome::NotFoundWithinBounds => None,
            };
            let ev = Evidence::Derivation {
                system: system.clone(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                certificate: certificate.clone(),
            };
            (certificate, ev)
        }
        Err(e) => (None, Evidence::Error(e.to_string())),
    }
}

fn satisfies_evidence(handle: &VarietyHandle, lhs: &Word, rhs: &Word) -> (Verdict, Evidence) {
    let id = Identity::new(lhs.clone(), rhs.clone());
    let bounds = handle.default_bounds(&[lhs, rhs]);
    let answer = satisfies(handle, &id, &bounds);
    (answer, Evidence::Decider { handle: handle.clone(), query: Query::Satisfies(id), bounds, answer })
}

fn isoterm_for_evidence(handle: &VarietyHandle, word: &Word) -> (Verdict, Evidence) {
    let bounds = handle.default_bounds(&[word]);
    let answer = isoterm_for(handle, word, &bounds);
    (answer, Evidence::Decider { handle: handle.clone(), query: Query::Isoterm(word.clone()), bounds, answer })
}

pub fn run_scenario(scenario: Scenario) -> Report {
    match scenario {
        Scenario::S1 => s1(),
        Scenario::S2 => s2(),
        Scenario::S3 => s3(),
        Scenario::S4 => s4(),
    }
}

fn s1() -> Report {
    let (u, v, u2, v2) = (w("xyxy"), w("xyyx"), w("yxyx"), w("yxxy"));
    let x = Word::from(vec![Variable::letter('x')]);
    let (ux, vx, u2x, v2x) = (u.concat(&x), v.concat(&x), u2.concat(&x), v2.concat(&x));
    let sigma_x = ids(&[(&ux, &u2x), (&vx, &v2x)]);
    let sigma_y = ids(&[(&ux, &vx)]);
    let lrb = VarietyHandle::Builtin(BuiltinVariety::LRB);
    let join_vx = VarietyHandle::join(vec![lrb.clone(), VarietyHandle::Presented(sigma_x.clone())]);
    let meet = VarietyHandle::meet(vec![VarietyHandle::Presented(sigma_y.clone()), join_vx.clone()]);

    let mut c = Checks::default();
    let (ans, ev) = satisfies_evidence(&lrb, &u, &v);
    c.push(format!("LRB satisfies {u} = {v}"), ans == Verdict::Yes, vec![ev]);

    let (ok, ev) = class_evidence(&sigma_x, &[&ux, &u2x]);
    c.push(format!("{{{ux}, {u2x}}} is a class of X"), ok, vec![ev]);
    let (ok, ev) = class_evidence(&sigma_x, &[&vx, &v2x]);
    c.push(format!("{{{vx}, {v2x}}} is a class of X"), ok, vec![ev]);

    let (ok, ev) = isoterm_evidence(&sigma_y, &u2x);
    c.push(format!("{u2x} is an isoterm for Y"), ok, vec![ev]);

    let (ans, ev) = satisfies_evidence(&lrb, &ux, &vx);
    let v_in_y = c.push(format!("LRB satisfies {ux} = {vx}, so V is contained in Y"), ans == Verdict::Yes, vec![ev]);

    let mut evs = Vec::new();
    let mut all = true;
    for word in [&ux, &u2x, &vx, &v2x] {
        let (ans, ev) = isoterm_for_evidence(&join_vx, word);
        all &= ans == Verdict::Yes;
        evs.push(ev);
    }
    c.push(format!("{ux}, {u2x}, {vx}, {v2x} are isoterms for V v X"), all, evs);

    let union = sigma_y.union(&sigma_x);
    let (cert, dev) = derive_evidence(&union, &u2x, &v2x);
    let (ans, lev) = satisfies_evidence(&lrb, &u2x, &v2x);
    let holds = c.push(
        format!("{u2x} = {v2x} follows from Y and X together and holds in LRB"),
        cert.is_some() && ans == Verdict::Yes,
        vec![dev.clone(), lev.clone()],
    );

    let (ans, iev) = isoterm_for_evidence(&meet, &u2x);
    let fails = c.push(format!("{u2x} is an isoterm for Y ^ (V v X)"), ans == Verdict::Yes, vec![iev.clone()]);

    let conclusion = (v_in_y && holds && fails).then(|| InclusionCertificate {
        lower: "V v (Y ^ X)".into(),
        upper: "Y ^ (V v X)".into(),
        identity: Identity::new(u2x.clone(), v2x.clone()),
        holds_in_lower: vec![lev, dev],
        fails_in_upper: vec![iev],
        argument: vec![
            "check 7: the identity holds in V = LRB and follows from the union of the presentations of Y and X, so it holds in Y ^ X".into(),
            "a join satisfies exactly the identities its components share, so it holds in V v (Y ^ X)".into(),
            format!("check 8: {u2x} is an isoterm for Y ^ (V v X) and differs from {v2x}, so the identity fails there"),
            "check 5: V is contained in Y, hence V v (Y ^ X) is contained in Y ^ (V v X) (modular inequality)".into(),
            "the separating identity makes the inclusion strict".into(),
        ],
    });

    Report {
        scenario: Scenario::S1,
        checks: c.0,
        notes: vec![
            format!("V = LRB, u = {u}, v = {v}, u' = {u2}, v' = {v2}"),
            format!(
                "X = var{{{} ; {}}}, Y = var{{{}}}",
                sigma_x.identities()[0],
                sigma_x.identities()[1],
                sigma_y.identities()[0]
            ),
        ],
        conclusion,
    }
}

fn s2() -> Report {
    let (u1, u2, v1, v2) = (w("x^9yx^3"), w("x^6yx^7"), w("x^7yx^5"), w("x^4yx^9"));
    let sigma_x = ids(&[(&u1, &u2), (&v1, &v2)]);
    let sigma_y = ids(&[(&u2, &v2)]);
    let power = Presentation::from_strs(&["x = x^3"]);

    let mut c = Checks::default();
    let (ok, ev) = class_evidence(&sigma_x, &[&u1, &u2]);
    c.push(format!("{{{u1}, {u2}}} is a class of X"), ok, vec![ev]);
    let (ok, ev) = class_evidence(&sigma_x, &[&v1, &v2]);
    c.push(format!("{{{v1}, {v2}}} is a class of X"), ok, vec![ev]);
    let (ok, ev) = isoterm_evidence(&sigma_y, &u1);
    c.push(format!("{u1} is an isoterm for Y"), ok, vec![ev]);
    let (cert, ev) = derive_evidence(&power, &u1, &v1);
    c.push(
        format!("{u1} = {v1} follows from x = x^3 in at most 3 steps"),
        cert.is_some_and(|c| c.len() <= 3),
        vec![ev],
    );
    let (cert, ev) = derive_evidence(&sigma_y.union(&sigma_x), &u1, &v1);
    c.push(format!("{u1} = {v1} follows from Y and X together"), cert.is_some(), vec![ev]);

    let mut evs = Vec::new();
    let mut clean = true;
    for word in [&u1, &u2] {
        let found = find_power_factor(word, 12).map(|(_, s)| s);
        clean &= found.is_none();
        evs.push(Evidence::PowerScan { word: word.clone(), exponent: 12, found });
    }
    c.push(format!("neither {u1} nor {u2} contains a 12th power"), clean, evs);

    Report {
        scenario: Scenario::S2,
        checks: c.0,
        notes: vec![format!(
            "X = var{{{} ; {}}}, Y = var{{{}}}",
            sigma_x.identities()[0],
            sigma_x.identities()[1],
            sigma_y.identities()[0]
        )],
        conclusion: None,
    }
}

fn s3() -> Report {
    let sigma_e = Presentation::from_strs(&["x^2 = x^3", "x^2y = xyx", "x^2y^2 = y^2x^2"]);
    let mut c = Checks::default();
    let mut notes = Vec::new();

    let bounds = SearchBounds::default_for(&sigma_e, &[&w("xyxy")]);
    let shaped = find_shaped_identity(&sigma_e, 2, &bounds);
    let (u, v) = match &shaped {
        Ok(ShapedSearch::Found { identity, certificate }) => {
            let (u, v) = (identity.lhs().clone(), identity.rhs().clone());
            let ev = Evidence::Derivation {
                system: sigma_e.clone(),
                lhs: u.clone(),
                rhs: v.clone(),
                certificate: Some(certificate.clone()),
            };
            let ok = has_shape(&u, &v, 2);
            c.push(format!("E yields the shaped identity {identity} (different ini, no x^2 or y^2)"), ok, vec![ev]);
            (u, v)
        }
        Ok(ShapedSearch::NoneWithinBounds) => {
            c.push("E yields a shaped identity", false, vec![Evidence::Error("none within bounds".into())]);
            return Report { scenario: Scenario::S3, checks: c.0, notes, conclusion: None };
        }
        Err(e) => {
            c.push("E yields a shaped identity", false, vec![Evidence::Error(e.to_string())]);
            return Report { scenario: Scenario::S3, checks: c.0, notes, conclusion: None };
        }
    };

    let (xt, tx) = (w("xt"), w("tx"));
    let (xtu, txu, xtv, txv) = (xt.concat(&u), tx.concat(&u), xt.concat(&v), tx.concat(&v));
    let sigma_x = ids(&[(&xtu, &txu), (&xtv, &txv)]);
    let sigma_y = ids(&[(&txu, &txv)]);

    let (ok, ev) = class_evidence(&sigma_x, &[&xtu, &txu]);
    c.push(format!("{{{xtu}, {txu}}} is a class of X"), ok, vec![ev]);
    let (ok, ev) = class_evidence(&sigma_x, &[&xtv, &txv]);
    c.push(format!("{{{xtv}, {txv}}} is a class of X"), ok, vec![ev]);
    let (ok, ev) = isoterm_evidence(&sigma_y, &xtu);
    c.push(format!("{xtu} is an isoterm for Y"), ok, vec![ev]);
    let (cert, ev) = derive_evidence(&sigma_y.union(&sigma_x), &xtu, &xtv);
    c.push(format!("{xtu} = {xtv} follows from Y and X together"), cert.is_some(), vec![ev]);

    let c_handle = VarietyHandle::Builtin(BuiltinVariety::C);
    let lrb = VarietyHandle::Builtin(BuiltinVariety::LRB);
    let table = [
        (&c_handle, "x^2", "x^3", Verdict::Yes),
        (&c_handle, "x^2y", "xyx", Verdict::Yes),
        (&lrb, "x^2", "x^3", Verdict::Yes),
        (&lrb, "x^2y", "xyx", Verdict::Yes),
        (&lrb, "x^2y^2", "y^2x^2", Verdict::No),
    ];
    let mut evs = Vec::new();
    let mut all = true;
    for (h, a, b, expected) in table {
        let (ans, ev) = satisfies_evidence(h, &w(a), &w(b));
        all &= ans == expected;
        evs.push(ev);
    }
    c.push("C and LRB satisfy x^2 = x^3 and x^2y = xyx; LRB fails x^2y^2 = y^2x^2", all, evs);

    c.push_status(
        format!("{xtu} and {txu} are not equivalent modulo E"),
        CheckStatus::Assumed,
        vec![Evidence::Assumption(format!(
            "Sapir's description of the fully invariant congruence places {xtu} and {txu} in different classes \
             for every variety containing E; no decision procedure for E is available here"
        ))],
    );
    notes.push(
        "out of scope: the strict inclusion of E in C v LRB (Lee) is used by the argument but not checked".into(),
    );

    Report { scenario: Scenario::S3, checks: c.0, notes, conclusion: None }
}

fn s4() -> Report {
    let mut c = Checks::default();
    for (check, description) in [
        (CatalogCheck::Implications, "no element violates an implication between special-element properties"),
        (CatalogCheck::NeutralSublattice, "neutral elements form a sublattice"),
        (CatalogCheck::StandardSublattice, "standard elements form a sublattice"),
        (CatalogCheck::BoundsNeutral, "bottom and top are neutral"),
    ] {
        let (lattices, failures) = sweep_catalog(check);
        let ok = failures.is_empty();
        c.push(description, ok, vec![Evidence::Catalog { check, lattices, failures }]);
    }

    let catalog = builtin_catalog();
    let mut notes = Vec::new();
    match search_element_counterexample(&catalog, ElementProperty::Distributive, ElementProperty::Costandard) {
        Some((e, x)) => notes.push(format!("distributive but not costandard: {} in {}", e.lattice.label(x), e.name)),
        None => notes.push("no distributive element that is not costandard in the catalog".into()),
    }
    let lower: Vec<&str> = catalog
        .iter()
        .filter(|e| !is_sublattice(&e.lattice, &elements_with(&e.lattice, ElementProperty::LowerModular)))
        .map(|e| e.name.as_str())
        .collect();
    notes.push(match lower.as_slice() {
        [] => "lower-modular elements form a sublattice in every catalog lattice".into(),
        names => format!("lower-modular elements are not a sublattice in {}", names.join(", ")),
    });
    Report { scenario: Scenario::S4, checks: c.0, notes, conclusion: None }
}
