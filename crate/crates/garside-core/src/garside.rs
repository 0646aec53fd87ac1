//! Certified combinatorial Garside structures and the left-greedy normal form.
//!
//! `from_e` takes a bounded labeled lattice whose labels are its own elements
//! (the doubled poset built by [`crate::partialmul`]), re-verifies the
//! combinatorial conditions, and materializes the meet, join, complement, and
//! label-composition tables that drive the word problem.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::poset::LabeledPoset;
use crate::report::CheckReport;
use crate::{CoreError, Result};

#[derive(Debug, Clone)]
pub struct GarsideStructure {
    labeled: LabeledPoset,
    n: usize,
    bottom: usize,
    top: usize,
    meet: Vec<u32>,
    join: Vec<u32>,
    /// `comp_up[x]` maps a label `t` to the unique `z >= x` with
    /// `lambda(x, z) = t`, when one exists.
    comp_up: Vec<HashMap<u32, u32>>,
    /// `complement[s] = lambda(s, top)`, so `s * complement(s) = Delta`.
    complement: Vec<u32>,
    /// `complement_inv[s] * s = Delta`.
    complement_inv: Vec<u32>,
}

/// One letter of an input word: a simple, possibly formally inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub simple: usize,
    pub inverse: bool,
}

/// Left-greedy normal form `Delta^inf f_1 ... f_k` with no factor equal to
/// the bottom or the top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub inf: i64,
    pub factors: Vec<String>,
}

impl GarsideStructure {
    /// Certifies the labeled poset as a combinatorial Garside structure:
    /// bounded, a lattice, group-like, balanced, with bijective complements
    /// and a label-preserving `tau = complement^2` (required to be the
    /// identity here, which makes the Garside element central).
    pub fn from_e(labeled: LabeledPoset) -> Result<Self> {
        let n = labeled.poset.len();
        if labeled.label_ids() != labeled.poset.ids() {
            return Err(CoreError::InvalidInput(
                "labels of the input poset must be its own elements".into(),
            ));
        }
        let bottom = labeled
            .poset
            .minimum()
            .ok_or_else(|| CoreError::InvalidInput("poset has no minimum".into()))?;
        let top = labeled
            .poset
            .maximum()
            .ok_or_else(|| CoreError::InvalidInput("poset has no maximum".into()))?;
        if let Err(b) = labeled.poset.is_lattice(true) {
            return Err(CoreError::InvalidInput(format!(
                "not a lattice: bowtie ({}, {}, {}, {})",
                labeled.poset.id(b.a),
                labeled.poset.id(b.b),
                labeled.poset.id(b.c),
                labeled.poset.id(b.d)
            )));
        }
        if !labeled.is_group_like().passed() {
            return Err(CoreError::InvalidInput("labeling is not group-like".into()));
        }
        if !labeled.is_balanced().passed() {
            return Err(CoreError::InvalidInput("labeling is not balanced".into()));
        }

        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                meet[x * n + y] = labeled
                    .poset
                    .meet(x, y)
                    .found()
                    .ok_or_else(|| CoreError::Internal("lattice without meets".into()))?
                    as u32;
                join[x * n + y] = labeled
                    .poset
                    .join(x, y)
                    .found()
                    .ok_or_else(|| CoreError::Internal("lattice without joins".into()))?
                    as u32;
            }
        }

        let mut comp_up: Vec<HashMap<u32, u32>> = vec![HashMap::new(); n];
        for x in 0..n {
            for z in labeled.poset.up_set(x).iter() {
                let t = labeled.label(x, z) as u32;
                if comp_up[x].insert(t, z as u32).is_some() {
                    return Err(CoreError::Internal(
                        "group-like labeling with ambiguous upward composition".into(),
                    ));
                }
            }
        }

        let complement: Vec<u32> = (0..n).map(|s| labeled.label(s, top) as u32).collect();
        let mut complement_inv = vec![u32::MAX; n];
        for s in 0..n {
            let c = complement[s] as usize;
            if complement_inv[c] != u32::MAX {
                return Err(CoreError::InvalidInput(
                    "complement map is not a bijection".into(),
                ));
            }
            complement_inv[c] = s as u32;
        }

        let s = GarsideStructure {
            labeled,
            n,
            bottom,
            top,
            meet,
            join,
            comp_up,
            complement,
            complement_inv,
        };
        s.verify_tables()?;
        Ok(s)
    }

    /// Structural checks beyond lattice-ness: the balanced-interval property
    /// (every simple divides Delta on both sides through the tables) and
    /// `tau = identity`, which the normal-form engine relies on.
    fn verify_tables(&self) -> Result<()> {
        for s in 0..self.n {
            // s * complement(s) = Delta realized as a chain through s
            let c = self.complement[s];
            if self.comp_up[s].get(&c) != Some(&(self.top as u32)) {
                return Err(CoreError::Internal("complement chain missing".into()));
            }
            // tau(s) = complement(complement(s)) must be s itself: the top is
            // central exactly when both complements invert each other.
            let tau = self.complement[self.complement[s] as usize] as usize;
            if tau != s {
                return Err(CoreError::InvalidInput(format!(
                    "tau is not the identity on {}; non-central Garside element",
                    self.labeled.poset.id(s)
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn poset(&self) -> &LabeledPoset {
        &self.labeled
    }

    pub fn simple_name(&self, s: usize) -> &str {
        self.labeled.poset.id(s)
    }

    pub fn simple_index(&self, name: &str) -> Option<usize> {
        self.labeled.poset.ids().iter().position(|s| s == name)
    }

    pub fn meet_of(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y] as usize
    }

    pub fn join_of(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y] as usize
    }

    pub fn complement_of(&self, s: usize) -> usize {
        self.complement[s] as usize
    }

    /// Left-weights the pair `(s, t)`: returns `(s', t')` with `s' t' = s t`
    /// in the monoid and `complement(s') meet t' = bottom`; `t'` is absent
    /// when the product is a single simple.
    pub fn multiply_simples(&self, s: usize, t: usize) -> (usize, Option<usize>) {
        if s == self.bottom {
            return (t, None);
        }
        if t == self.bottom {
            return (s, None);
        }
        let u = self.meet_of(self.complement_of(s), t);
        if u == self.bottom {
            return (s, Some(t));
        }
        let s2 = self.comp_up[s][&(u as u32)] as usize;
        let t2 = self.labeled.label(u, t);
        if t2 == self.bottom {
            (s2, None)
        } else {
            (s2, Some(t2))
        }
    }

    /// Parses a whitespace-separated word: each token is a simple id, with a
    /// trailing `'` for a formal inverse; `delta` denotes the top element.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        for raw in text.split_whitespace() {
            let (name, inverse) = match raw.strip_suffix('\'') {
                Some(base) => (base, true),
                None => (raw, false),
            };
            let simple = if name == "delta" {
                self.top
            } else {
                self.simple_index(name).ok_or_else(|| {
                    CoreError::InvalidInput(format!("unknown simple id {name}"))
                })?
            };
            out.push(Letter { simple, inverse });
        }
        Ok(out)
    }

    /// Left-greedy normal form. Inverse letters are rewritten through the
    /// left complement (`complement_inv(s) * s = Delta`) with a global
    /// `Delta^{-1}` shift, valid because the Garside element is central here.
    pub fn normal_form(&self, word: &[Letter]) -> NormalForm {
        let mut inf: i64 = 0;
        let mut factors: Vec<usize> = Vec::new();
        for l in word {
            if l.inverse {
                inf -= 1;
                factors.push(self.complement_inv[l.simple] as usize);
            } else {
                factors.push(l.simple);
            }
        }
        // local left-weighting passes until stable
        loop {
            factors.retain(|&f| f != self.bottom);
            let mut delta_count = 0;
            factors.retain(|&f| {
                if f == self.top {
                    delta_count += 1;
                    false
                } else {
                    true
                }
            });
            inf += delta_count;
            let mut changed = delta_count > 0;
            let mut i = 0;
            while i + 1 < factors.len() {
                let (a, b) = (factors[i], factors[i + 1]);
                let (a2, b2) = self.multiply_simples(a, b);
                match b2 {
                    Some(b2) => {
                        if a2 != a || b2 != b {
                            factors[i] = a2;
                            factors[i + 1] = b2;
                            changed = true;
                        }
                        i += 1;
                    }
                    None => {
                        factors[i] = a2;
                        factors.remove(i + 1);
                        changed = true;
                        if i > 0 {
                            i -= 1;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        NormalForm {
            inf,
            factors: factors
                .into_iter()
                .map(|f| self.simple_name(f).to_string())
                .collect(),
        }
    }

    pub fn normal_form_str(&self, text: &str) -> Result<NormalForm> {
        Ok(self.normal_form(&self.parse_word(text)?))
    }

    pub fn equal_words(&self, w1: &[Letter], w2: &[Letter]) -> bool {
        self.normal_form(w1) == self.normal_form(w2)
    }

    /// Re-expands a normal form into letters (for idempotence checks).
    pub fn expand(&self, nf: &NormalForm) -> Vec<Letter> {
        let mut out = Vec::new();
        let delta = Letter { simple: self.top, inverse: nf.inf < 0 };
        for _ in 0..nf.inf.abs() {
            out.push(delta);
        }
        for f in &nf.factors {
            out.push(Letter { simple: self.simple_index(f).unwrap(), inverse: false });
        }
        out
    }

    /// Checks every relation of a presentation whose words are simple names.
    pub fn check_relations(&self, relations: &[(Vec<String>, Vec<String>)]) -> CheckReport {
        let mut report = CheckReport::new();
        let mut violations = Vec::new();
        for (lhs, rhs) in relations {
            let to_word = |w: &[String]| -> Vec<Letter> {
                w.iter()
                    .map(|s| Letter { simple: self.simple_index(s).unwrap(), inverse: false })
                    .collect()
            };
            let l = to_word(lhs);
            let r = to_word(rhs);
            if !self.equal_words(&l, &r) {
                violations.push(crate::report::violation(
                    "relation-soundness",
                    &[&lhs.join("."), &rhs.join(".")],
                    "defining relation does not normalize to equal normal forms",
                ));
            }
        }
        report.condition("relation-soundness", violations, None);
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partialmul::PartialMulTable;

    fn free_structure() -> GarsideStructure {
        let mut ids = vec!["e".to_string(), "s1".into(), "s2".into()];
        let n = ids.len();
        let mut products = Vec::new();
        for i in 0..n {
            products.push((0, i, i));
            products.push((i, 0, i));
        }
        ids.sort_by_key(|s| s != "e"); // keep e first
        let t = PartialMulTable::from_indexed(ids, 0, &products).unwrap();
        GarsideStructure::from_e(t.build_e_checked().unwrap()).unwrap()
    }

    #[test]
    fn free_structure_has_six_simples_and_delta() {
        let g = free_structure();
        assert_eq!(g.len(), 6);
        assert_eq!(g.simple_name(g.top()), "e~");
        assert_eq!(g.simple_name(g.bottom()), "e");
    }

    #[test]
    fn multiply_simples_examples() {
        let g = free_structure();
        let s1 = g.simple_index("s1").unwrap();
        let s2 = g.simple_index("s2").unwrap();
        // bottom absorbs
        assert_eq!(g.multiply_simples(g.bottom(), s2), (s2, None));
        // s1, s2 already left-weighted in the free structure
        assert_eq!(g.multiply_simples(s1, s2), (s1, Some(s2)));
    }

    #[test]
    fn cancellation_and_delta() {
        let g = free_structure();
        let nf = g.normal_form_str("s1 s1'").unwrap();
        assert_eq!(nf, NormalForm { inf: 0, factors: vec![] });
        let nf = g.normal_form_str("delta").unwrap();
        assert_eq!(nf, NormalForm { inf: 1, factors: vec![] });
        let nf = g.normal_form_str("s1 s2").unwrap();
        assert_eq!(nf.factors, vec!["s1".to_string(), "s2".into()]);
        assert!(!g
            .equal_words(&g.parse_word("s1").unwrap(), &g.parse_word("s2").unwrap()));
        assert!(g.equal_words(&g.parse_word("s1 s2").unwrap(), &g.parse_word("s1 s2").unwrap()));
    }

    #[test]
    fn boolean_structure_commutes() {
        // the 2-set boolean table gives a Z^2 x Z-like structure
        let m = 4usize;
        let ids: Vec<String> = (0..m).map(|s| format!("{s:02b}")).collect();
        let mut products = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if a & b == 0 {
                    products.push((a, b, a | b));
                }
            }
        }
        let t = PartialMulTable::from_indexed(ids, 0, &products).unwrap();
        let g = GarsideStructure::from_e(t.build_e_checked().unwrap()).unwrap();
        let x = g.parse_word("01 10").unwrap();
        let y = g.parse_word("10 01").unwrap();
        assert!(g.equal_words(&x, &y));
        let rels = t.presentation_ge().relations;
        assert!(g.check_relations(&rels).passed());
    }
}
