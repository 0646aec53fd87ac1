//! Positive partial multiplications: axiom verification, derived prefix and
//! suffix orders, the lattice criterion for the doubled poset, construction of
//! the doubled labeled poset `E`, and presentation emission.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::poset::{Bits, BoundResult, FinitePoset, LabeledPoset};
use crate::report::{violation, CheckReport};
use crate::{CoreError, Result};

/// A finite set with identity and a partial product, indexed densely.
#[derive(Debug, Clone)]
pub struct PartialMulTable {
    ids: Vec<String>,
    identity: usize,
    prod: Vec<Option<u32>>, // n * n, row-major: prod[a * n + b]
}

#[derive(Debug, Serialize, Deserialize)]
struct PmulFile {
    elements: Vec<String>,
    identity: String,
    products: Vec<(String, String, String)>,
}

/// A group presentation by generators and relations between positive words.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<(Vec<String>, Vec<String>)>,
}

impl PartialMulTable {
    pub fn new(
        ids: Vec<String>,
        identity: &str,
        products: &[(String, String, String)],
    ) -> Result<Self> {
        let n = ids.len();
        let index: HashMap<&str, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != n {
            return Err(CoreError::InvalidInput("duplicate element ids".into()));
        }
        let identity = *index
            .get(identity)
            .ok_or_else(|| CoreError::InvalidInput(format!("unknown identity {identity}")))?;
        let mut prod = vec![None; n * n];
        for (a, b, c) in products {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| CoreError::InvalidInput(format!("unknown element {a}")))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| CoreError::InvalidInput(format!("unknown element {b}")))?;
            let ic = *index
                .get(c.as_str())
                .ok_or_else(|| CoreError::InvalidInput(format!("unknown element {c}")))?;
            match prod[ia * n + ib] {
                None => prod[ia * n + ib] = Some(ic as u32),
                Some(prev) if prev as usize == ic => {}
                Some(prev) => {
                    return Err(CoreError::InvalidInput(format!(
                        "conflicting products: {a}*{b} is both {} and {c}",
                        ids[prev as usize]
                    )))
                }
            }
        }
        Ok(PartialMulTable { ids, identity, prod })
    }

    /// Builds a table from index-level products; products must be a partial
    /// function on pairs.
    pub fn from_indexed(
        ids: Vec<String>,
        identity: usize,
        products: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = ids.len();
        let mut prod = vec![None; n * n];
        for &(a, b, c) in products {
            match prod[a * n + b] {
                None => prod[a * n + b] = Some(c as u32),
                Some(prev) if prev as usize == c => {}
                Some(_) => {
                    return Err(CoreError::InvalidInput(format!(
                        "conflicting products at ({}, {})",
                        ids[a], ids[b]
                    )))
                }
            }
        }
        Ok(PartialMulTable { ids, identity, prod })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: PmulFile = serde_json::from_str(text)?;
        Self::new(f.elements, &f.identity, &f.products)
    }

    pub fn to_json(&self) -> String {
        let f = PmulFile {
            elements: self.ids.clone(),
            identity: self.ids[self.identity].clone(),
            products: self
                .defined_pairs()
                .map(|(a, b, c)| {
                    (self.ids[a].clone(), self.ids[b].clone(), self.ids[c].clone())
                })
                .collect(),
        };
        serde_json::to_string_pretty(&f).unwrap()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|s| s == id)
    }

    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.prod[a * self.len() + b].map(|c| c as usize)
    }

    pub fn defined_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.len();
        (0..n * n).filter_map(move |k| self.prod[k].map(|c| (k / n, k % n, c as usize)))
    }

    /// Exhaustive verification of the six positive-partial-multiplication
    /// axioms. Failures are report entries with re-checkable witnesses.
    pub fn verify_axioms(&self) -> CheckReport {
        let n = self.len();
        let e = self.identity;
        let mut report = CheckReport::new();

        let mut identity_viols = Vec::new();
        for u in 0..n {
            if self.product(e, u) != Some(u) {
                identity_viols.push(violation(
                    "identity",
                    &[self.id(u)],
                    &format!("e*{} is not {}", self.id(u), self.id(u)),
                ));
            }
            if self.product(u, e) != Some(u) {
                identity_viols.push(violation(
                    "identity",
                    &[self.id(u)],
                    &format!("{}*e is not {}", self.id(u), self.id(u)),
                ));
            }
        }
        report.condition("identity", identity_viols, None);

        let mut left_assoc = Vec::new();
        let mut right_assoc = Vec::new();
        for (u, v, uv) in self.defined_pairs() {
            for w in 0..n {
                if let Some(uv_w) = self.product(uv, w) {
                    // left associativity: v*w and u*(v*w) must be defined and agree
                    match self.product(v, w) {
                        None => left_assoc.push(violation(
                            "left-associativity",
                            &[self.id(u), self.id(v), self.id(w)],
                            "(u*v)*w defined but v*w undefined",
                        )),
                        Some(vw) => match self.product(u, vw) {
                            None => left_assoc.push(violation(
                                "left-associativity",
                                &[self.id(u), self.id(v), self.id(w)],
                                "(u*v)*w defined but u*(v*w) undefined",
                            )),
                            Some(r) if r != uv_w => left_assoc.push(violation(
                                "left-associativity",
                                &[self.id(u), self.id(v), self.id(w)],
                                "(u*v)*w != u*(v*w)",
                            )),
                            _ => {}
                        },
                    }
                }
            }
        }
        for (v, w, vw) in self.defined_pairs() {
            for u in 0..n {
                if let Some(u_vw) = self.product(u, vw) {
                    match self.product(u, v) {
                        None => right_assoc.push(violation(
                            "right-associativity",
                            &[self.id(u), self.id(v), self.id(w)],
                            "u*(v*w) defined but u*v undefined",
                        )),
                        Some(uv) => match self.product(uv, w) {
                            None => right_assoc.push(violation(
                                "right-associativity",
                                &[self.id(u), self.id(v), self.id(w)],
                                "u*(v*w) defined but (u*v)*w undefined",
                            )),
                            Some(r) if r != u_vw => right_assoc.push(violation(
                                "right-associativity",
                                &[self.id(u), self.id(v), self.id(w)],
                                "u*(v*w) != (u*v)*w",
                            )),
                            _ => {}
                        },
                    }
                }
            }
        }
        report.condition("left-associativity", left_assoc, None);
        report.condition("right-associativity", right_assoc, None);

        let mut positivity = Vec::new();
        for (u, v, w) in self.defined_pairs() {
            if w == e && (u != e || v != e) {
                positivity.push(violation(
                    "positivity",
                    &[self.id(u), self.id(v)],
                    "u*v = e with (u, v) != (e, e)",
                ));
            }
        }
        report.condition("positivity", positivity, None);

        let mut left_cancel = Vec::new();
        for u in 0..n {
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for v in 0..n {
                if let Some(w) = self.product(u, v) {
                    if let Some(&v0) = seen.get(&w) {
                        left_cancel.push(violation(
                            "left-cancellability",
                            &[self.id(u), self.id(v0), self.id(v)],
                            &format!("u*v = u*v' = {} with v != v'", self.id(w)),
                        ));
                    } else {
                        seen.insert(w, v);
                    }
                }
            }
        }
        report.condition("left-cancellability", left_cancel, None);

        let mut right_cancel = Vec::new();
        for u in 0..n {
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for v in 0..n {
                if let Some(w) = self.product(v, u) {
                    if let Some(&v0) = seen.get(&w) {
                        right_cancel.push(violation(
                            "right-cancellability",
                            &[self.id(u), self.id(v0), self.id(v)],
                            &format!("v*u = v'*u = {} with v != v'", self.id(w)),
                        ));
                    } else {
                        seen.insert(w, v);
                    }
                }
            }
        }
        report.condition("right-cancellability", right_cancel, None);

        report
    }

    /// The prefix order: `u <=_L v` iff `u*w = v` for some `w`.
    pub fn left_order(&self) -> Result<FinitePoset> {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (u, _, v) in self.defined_pairs() {
            leq[u * n + v] = true;
        }
        FinitePoset::new(self.ids.clone(), |i, j| leq[i * n + j])
            .map_err(|e| CoreError::Internal(format!("left order is not a poset: {e}")))
    }

    /// The suffix order: `u <=_R v` iff `w*u = v` for some `w`.
    pub fn right_order(&self) -> Result<FinitePoset> {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (_, u, v) in self.defined_pairs() {
            leq[u * n + v] = true;
        }
        FinitePoset::new(self.ids.clone(), |i, j| leq[i * n + j])
            .map_err(|e| CoreError::Internal(format!("right order is not a poset: {e}")))
    }

    fn join_exists_table(poset: &FinitePoset) -> Vec<Bits> {
        let n = poset.len();
        let mut t = vec![Bits::new(n); n];
        for u in 0..n {
            for v in 0..n {
                if poset.join(u, v).found().is_some() {
                    t[u].set(v);
                }
            }
        }
        t
    }

    /// The four conditions for `G_U x Z` to be Garside: both derived orders are
    /// meet-semilattices, joins are closed under one-sided multiplication, and
    /// the mixed four-element condition. Join-semilattice status is reported
    /// informationally.
    pub fn check_theorem39(&self) -> Result<CheckReport> {
        let left = self.left_order()?;
        let right = self.right_order()?;
        let mut report = CheckReport::new();
        let n = self.len();

        // meet-semilattice via bowtie detection: both orders have a minimum
        // (the identity), so no bowtie is equivalent to all meets existing.
        let mut left_viol = Vec::new();
        if let Some(b) = left.find_bowtie() {
            left_viol.push(left.bowtie_violation(&b, "left-order"));
        }
        report.condition("left-order-meet-semilattice", left_viol, None);
        let mut right_viol = Vec::new();
        if let Some(b) = right.find_bowtie() {
            right_viol.push(right.bowtie_violation(&b, "right-order"));
        }
        report.condition("right-order-meet-semilattice", right_viol, None);

        let left_join_full = (0..n)
            .all(|u| (0..n).all(|v| left.join(u, v).found().is_some()));
        let right_join_full = (0..n)
            .all(|u| (0..n).all(|v| right.join(u, v).found().is_some()));
        report.note(
            "join-semilattice-status",
            format!("left-order: {left_join_full}, right-order: {right_join_full}"),
        );

        // closure of left joins under left multiplication
        let mut closure_left = Vec::new();
        'l2: for u in 0..n {
            for v in (u + 1)..n {
                if let BoundResult::Found(w) = left.join(u, v) {
                    for a in 0..n {
                        if self.product(a, u).is_some()
                            && self.product(a, v).is_some()
                            && self.product(a, w).is_none()
                        {
                            closure_left.push(violation(
                                "left-join-closure",
                                &[self.id(a), self.id(u), self.id(v), self.id(w)],
                                "a*u, a*v defined, w = join_L(u, v), but a*w undefined",
                            ));
                            break 'l2;
                        }
                    }
                }
            }
        }
        report.condition("left-join-closure", closure_left, None);

        let mut closure_right = Vec::new();
        'l3: for u in 0..n {
            for v in (u + 1)..n {
                if let BoundResult::Found(w) = right.join(u, v) {
                    for a in 0..n {
                        if self.product(u, a).is_some()
                            && self.product(v, a).is_some()
                            && self.product(w, a).is_none()
                        {
                            closure_right.push(violation(
                                "right-join-closure",
                                &[self.id(a), self.id(u), self.id(v), self.id(w)],
                                "u*a, v*a defined, w = join_R(u, v), but w*a undefined",
                            ));
                            break 'l3;
                        }
                    }
                }
            }
        }
        report.condition("right-join-closure", closure_right, None);

        // mixed condition: a*u, a*v, b*u, b*v defined forces a right join for
        // (a, b) or a left join for (u, v)
        let left_join = Self::join_exists_table(&left);
        let right_join = Self::join_exists_table(&right);
        let mut defined_rows = vec![Bits::new(n); n];
        for (a, u, _) in self.defined_pairs() {
            defined_rows[a].set(u);
        }
        let mut mixed = Vec::new();
        'l4: for a in 0..n {
            for b in (a + 1)..n {
                if right_join[a].test(b) {
                    continue;
                }
                let common = defined_rows[a].and(&defined_rows[b]);
                if common.count() < 2 {
                    continue;
                }
                let members: Vec<usize> = common.iter().collect();
                for (i, &u) in members.iter().enumerate() {
                    for &v in &members[i + 1..] {
                        if !left_join[u].test(v) {
                            mixed.push(violation(
                                "mixed-join-condition",
                                &[self.id(a), self.id(b), self.id(u), self.id(v)],
                                "a*u, a*v, b*u, b*v all defined but neither a, b have a right join nor u, v a left join",
                            ));
                            break 'l4;
                        }
                    }
                }
            }
        }
        report.condition("mixed-join-condition", mixed, None);

        Ok(report)
    }

    /// The five assumptions for `E` to be a lattice. The grading assumption is
    /// automatic for a finite set and recorded as such; the remaining four are
    /// the semilattice and closure conditions shared with `check_theorem39`.
    pub fn check_prop37(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new();
        report.note(
            "weakly-boundedly-graded",
            "finite poset: any linear extension is a bounded rank map".into(),
        );
        report.merge(self.check_theorem39()?);
        Ok(report)
    }

    /// The doubled poset `E` on two copies of the element set, with the
    /// interval labeling. Order axioms are re-verified on construction; the
    /// labeling is group-like and balanced for any table passing the axioms,
    /// and both facts are asserted by `build_e_checked`.
    pub fn build_e(&self) -> Result<LabeledPoset> {
        let n = self.len();
        let e = self.identity;
        let mut ids: Vec<String> = self.ids.clone();
        ids.extend(self.ids.iter().map(|s| format!("{s}~")));
        // relation
        let left = self.left_order()?;
        let right = self.right_order()?;
        let leq = |i: usize, j: usize| -> bool {
            match (i < n, j < n) {
                (true, true) => left.leq(i, j),
                (true, false) => self.product(j - n, i).is_some(),
                (false, true) => false,
                (false, false) => right.leq(j - n, i - n),
            }
        };
        let poset = FinitePoset::new(ids.clone(), leq)
            .map_err(|err| CoreError::Internal(format!("E relation is not an order: {err}")))?;
        debug_assert_eq!(poset.minimum(), Some(e));
        debug_assert_eq!(poset.maximum(), Some(n + e));

        // labels: label universe is E itself
        let mut lambda: HashMap<(usize, usize), usize> = HashMap::new();
        for i in 0..2 * n {
            for j in poset.up_set(i).iter() {
                let label = if i < n && j < n {
                    // u <= u*v: label (v, 0)
                    let v = (0..n)
                        .find(|&v| self.product(i, v) == Some(j))
                        .ok_or_else(|| CoreError::Internal("missing left witness".into()))?;
                    v
                } else if i < n {
                    // (u,0) <= (vbar,1) with v*u in U: label (overline{v*u}, 1)
                    let v = j - n;
                    let vu = self
                        .product(v, i)
                        .ok_or_else(|| CoreError::Internal("missing bar witness".into()))?;
                    n + vu
                } else {
                    // (xbar,1) <= (ybar,1) with x = v*y: label (v, 0)
                    let x = i - n;
                    let y = j - n;
                    let v = (0..n)
                        .find(|&v| self.product(v, y) == Some(x))
                        .ok_or_else(|| CoreError::Internal("missing right witness".into()))?;
                    v
                };
                lambda.insert((i, j), label);
            }
        }
        LabeledPoset::new(poset, lambda, ids)
    }

    /// `build_e` plus the group-like and balanced assertions.
    pub fn build_e_checked(&self) -> Result<LabeledPoset> {
        let e = self.build_e()?;
        let gl = e.is_group_like();
        if !gl.passed() {
            return Err(CoreError::Internal(
                "doubled poset labeling is not group-like; axiom checker bug".into(),
            ));
        }
        let b = e.is_balanced();
        if !b.passed() {
            return Err(CoreError::Internal(
                "doubled poset labeling is not balanced; axiom checker bug".into(),
            ));
        }
        Ok(e)
    }

    /// Presentation of the interval group of `(U, <=_L)`: one relation per
    /// defined product.
    pub fn presentation_gu(&self) -> Presentation {
        let relations = self
            .defined_pairs()
            .filter(|&(u, v, _)| u != self.identity && v != self.identity)
            .map(|(u, v, w)| {
                (
                    vec![self.ids[u].clone(), self.ids[v].clone()],
                    vec![self.ids[w].clone()],
                )
            })
            .collect();
        Presentation { generators: self.ids.clone(), relations }
    }

    /// Presentation of the interval group of `E`: the three relation families
    /// of the doubled poset (products in `U`, bar absorption, bar shifts).
    pub fn presentation_ge(&self) -> Presentation {
        let n = self.len();
        let bar = |u: usize| format!("{}~", self.ids[u]);
        let mut generators = self.ids.clone();
        generators.extend((0..n).map(bar));
        let mut relations = Vec::new();
        for (u, v, w) in self.defined_pairs() {
            // (u,0)(v,0) = (w,0)
            relations.push((
                vec![self.ids[u].clone(), self.ids[v].clone()],
                vec![self.ids[w].clone()],
            ));
            // (v,0)(overline{u*v},1) = (ubar,1): u*v in U means v <= (ubar,1)
            relations.push((vec![self.ids[v].clone(), bar(w)], vec![bar(u)]));
            // (overline{u*v},1)(u,0) = (vbar,1)
            relations.push((vec![bar(w), self.ids[u].clone()], vec![bar(v)]));
        }
        Presentation { generators, relations }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn free_table(k: usize) -> PartialMulTable {
        // U = S cup {e}, products only with e
        let mut ids = vec!["e".to_string()];
        ids.extend((1..=k).map(|i| format!("s{i}")));
        let n = ids.len();
        let mut products = Vec::new();
        for i in 0..n {
            products.push((0, i, i));
            products.push((i, 0, i));
        }
        PartialMulTable::from_indexed(ids, 0, &products).unwrap()
    }

    pub(crate) fn boolean_table(k: usize) -> PartialMulTable {
        // subsets of a k-set under disjoint union
        let m = 1usize << k;
        let ids: Vec<String> = (0..m).map(|s| format!("{s:0k$b}", k = k)).collect();
        let mut products = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if a & b == 0 {
                    products.push((a, b, a | b));
                }
            }
        }
        PartialMulTable::from_indexed(ids, 0, &products).unwrap()
    }

    #[test]
    fn free_table_passes_everything() {
        let t = free_table(3);
        assert!(t.verify_axioms().passed());
        let r = t.check_theorem39().unwrap();
        assert!(r.passed());
        assert!(t.check_prop37().unwrap().passed());
    }

    #[test]
    fn broken_left_cancellability() {
        // u*v = u*w = z with v != w
        let ids = vec!["e".into(), "u".into(), "v".into(), "w".into(), "z".into()];
        let mut products = vec![];
        for i in 0..5 {
            products.push((0, i, i));
            products.push((i, 0, i));
        }
        products.push((1, 2, 4));
        products.push((1, 3, 4));
        let t = PartialMulTable::from_indexed(ids, 0, &products).unwrap();
        let r = t.verify_axioms();
        assert!(!r.passed());
        assert!(r
            .conditions
            .iter()
            .any(|c| c.id == "left-cancellability" && !c.violations.is_empty()));
    }

    #[test]
    fn broken_positivity() {
        let ids = vec!["e".into(), "u".into(), "v".into()];
        let mut products = vec![];
        for i in 0..3 {
            products.push((0, i, i));
            products.push((i, 0, i));
        }
        products.push((1, 2, 0));
        let t = PartialMulTable::from_indexed(ids, 0, &products).unwrap();
        let r = t.verify_axioms();
        assert!(!r.passed());
        assert!(r
            .conditions
            .iter()
            .any(|c| c.id == "positivity" && !c.violations.is_empty()));
    }

    #[test]
    fn left_order_of_free_table() {
        let t = free_table(2);
        let p = t.left_order().unwrap();
        // e below each generator, generators incomparable
        for i in 1..3 {
            assert!(p.leq(0, i));
            assert!(!p.leq(i, 0));
        }
        assert!(!p.leq(1, 2) && !p.leq(2, 1));
    }

    #[test]
    fn e_of_free_group_is_a_lattice_with_6_elements() {
        let t = free_table(2);
        let e = t.build_e_checked().unwrap();
        assert_eq!(e.poset.len(), 6);
        // exhaustive meet/join oracle
        for x in 0..6 {
            for y in 0..6 {
                assert!(e.poset.meet(x, y).found().is_some());
                assert!(e.poset.join(x, y).found().is_some());
            }
        }
        // (s,0) < (sbar,1) must fail for s != e, while (s,0) < (ebar,1) holds
        let s1 = t.index_of("s1").unwrap();
        let n = t.len();
        assert!(!e.poset.leq(s1, n + s1));
        assert!(e.poset.leq(s1, n + t.identity()));
    }

    #[test]
    fn boolean_table_checks() {
        let t = boolean_table(2);
        assert!(t.verify_axioms().passed());
        assert!(t.check_theorem39().unwrap().passed());
        let e = t.build_e_checked().unwrap();
        assert_eq!(e.poset.len(), 8);
        assert!(e.poset.find_bowtie().is_none());
        // presentation of Z^S: all relations commute pairs into unions
        let p = t.presentation_gu();
        assert_eq!(p.generators.len(), 4);
    }

    #[test]
    fn ge_presentation_counts() {
        let t = free_table(2);
        let p = t.presentation_ge();
        assert_eq!(p.generators.len(), 2 * t.len());
    }

    #[test]
    fn relabeling_commutes() {
        // applying a bijection to ids preserves all verdicts
        let t = boolean_table(2);
        let renamed: Vec<String> = t.ids().iter().map(|s| format!("X{s}X")).collect();
        let products: Vec<(usize, usize, usize)> = t.defined_pairs().collect();
        let t2 = PartialMulTable::from_indexed(renamed, t.identity(), &products).unwrap();
        assert_eq!(t.verify_axioms().passed(), t2.verify_axioms().passed());
        assert_eq!(
            t.check_theorem39().unwrap().passed(),
            t2.check_theorem39().unwrap().passed()
        );
        assert_eq!(
            t.build_e().unwrap().poset.find_bowtie().is_none(),
            t2.build_e().unwrap().poset.find_bowtie().is_none()
        );
    }

    #[test]
    fn json_round_trip() {
        let t = free_table(2);
        let t2 = PartialMulTable::from_json(&t.to_json()).unwrap();
        assert_eq!(t.ids(), t2.ids());
        let pairs: Vec<_> = t.defined_pairs().collect();
        let pairs2: Vec<_> = t2.defined_pairs().collect();
        assert_eq!(pairs, pairs2);
    }
}
