//! Candidate simple sets inside Coxeter groups: the union-of-dual-intervals
//! construction for cyclic-type and glued presentation graphs, the induced
//! partial multiplication, and the exhaustive verification of the reflection
//! factorization, join-closure, and graph-level gluing hypotheses.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxMatrix, Enumerated, Realization};
use crate::partialmul::PartialMulTable;
use crate::poset::{Bits, FinitePoset};
use crate::report::{violation, CheckReport, Violation};
use crate::{CoreError, Result};

/// One element of the candidate set `U`, with its reduced word, reflection
/// length, support, and the spherical subsets whose dual interval contains it.
#[derive(Debug, Clone)]
pub struct Member {
    pub word: Vec<usize>,
    pub rlen: usize,
    pub support: Vec<usize>,
    pub origins: Vec<usize>,
}

/// The candidate simple set `U` of a graph: a union of dual intervals
/// `[1, delta_I]` over chosen spherical subsets, deduplicated by exact
/// matrices, with cached lengths and supports.
pub struct UConstruction {
    pub realization: Realization,
    pub subsets: Vec<Vec<usize>>,
    pub deltas: Vec<Vec<usize>>,
    pub members: Vec<Member>,
    matrices: Vec<CoxMatrix>,
    index: HashMap<CoxMatrix, usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct UCertFile {
    pub version: u32,
    pub vertices: Vec<String>,
    pub subsets: Vec<Vec<String>>,
    pub members: Vec<UCertMember>,
    pub products: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct UCertMember {
    pub id: String,
    pub word: Vec<String>,
    pub rlen: usize,
    pub origins: Vec<usize>,
}

impl UConstruction {
    /// Builds `U` as the union of the dual intervals of the given subsets.
    /// Reflection lengths cached on members are asserted to be independent of
    /// the witnessing parabolic.
    pub fn build(realization: Realization, subsets: Vec<Vec<usize>>) -> Result<Self> {
        let mut deltas = Vec::new();
        for s in &subsets {
            deltas.push(realization.compatible_coxeter_word(s)?);
        }
        let mut members: Vec<Member> = Vec::new();
        let mut matrices: Vec<CoxMatrix> = Vec::new();
        let mut index: HashMap<CoxMatrix, usize> = HashMap::new();
        members.push(Member { word: vec![], rlen: 0, support: vec![], origins: vec![] });
        matrices.push(realization.identity_matrix());
        index.insert(realization.identity_matrix(), 0);
        for (k, subset) in subsets.iter().enumerate() {
            let en = realization.enumerate_parabolic(subset)?;
            let delta = en.apply_word(0, &deltas[k]);
            for u in realization.dual_interval(&en, delta) {
                let m = &en.elements[u];
                match index.get(m) {
                    Some(&i) => {
                        if members[i].rlen != en.rlen[u] {
                            return Err(CoreError::Internal(format!(
                                "reflection length of member {i} depends on the witnessing parabolic"
                            )));
                        }
                        members[i].origins.push(k);
                    }
                    None => {
                        let i = members.len();
                        let word = en.words[u].clone();
                        let mut support = word.clone();
                        support.sort();
                        support.dedup();
                        members.push(Member {
                            word,
                            rlen: en.rlen[u],
                            support,
                            origins: vec![k],
                        });
                        matrices.push(m.clone());
                        index.insert(m.clone(), i);
                    }
                }
            }
        }
        Ok(UConstruction { realization, subsets, deltas, members, matrices, index })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_name(&self, i: usize) -> String {
        self.realization.word_name(&self.members[i].word)
    }

    pub fn matrix(&self, i: usize) -> &CoxMatrix {
        &self.matrices[i]
    }

    pub fn member_index(&self, m: &CoxMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Indices of the reflections contained in `U` (`R_U = R cap U`).
    pub fn reflection_members(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.members[i].rlen == 1).collect()
    }

    /// The partial multiplication induced by the ambient group: `u * v` is
    /// defined iff the group product lies in `U` and reflection lengths add.
    /// Table indices coincide with member indices. Rows are scanned in
    /// parallel and merged in index order, so the table is deterministic.
    pub fn partial_mul(&self) -> Result<PartialMulTable> {
        use rayon::prelude::*;
        let n = self.len();
        let max_len = self.members.iter().map(|m| m.rlen).max().unwrap_or(0);
        let ids: Vec<String> = (0..n).map(|i| self.member_name(i)).collect();
        let rows: Vec<Vec<(usize, usize, usize)>> = (0..n)
            .into_par_iter()
            .map(|u| {
                let mut row = Vec::new();
                for v in 0..n {
                    if self.members[u].rlen + self.members[v].rlen > max_len {
                        continue;
                    }
                    let mut m = self.matrices[u].clone();
                    for &g in &self.members[v].word {
                        m = self.realization.mul_gen_right(&m, g);
                    }
                    if let Some(&w) = self.index.get(&m) {
                        if self.members[w].rlen
                            == self.members[u].rlen + self.members[v].rlen
                        {
                            row.push((u, v, w));
                        }
                    }
                }
                row
            })
            .collect();
        let products: Vec<(usize, usize, usize)> = rows.into_iter().flatten().collect();
        PartialMulTable::from_indexed(ids, 0, &products)
    }

    /// For each chosen subset: which members lie in its parabolic, and at
    /// which enumeration index.
    fn parabolic_membership(&self, k: usize) -> Result<HashMap<usize, usize>> {
        let en = self.realization.enumerate_parabolic(&self.subsets[k])?;
        let mut out = HashMap::new();
        for i in 0..self.len() {
            if let Some(&e) = en.index.get(&self.matrices[i]) {
                out.insert(i, e);
            }
        }
        Ok(out)
    }

    /// The two reflection-factorization conditions: every member factors
    /// through `R_U` with additive lengths (condition 1, checked on the
    /// induced table), and every minimal reflection factorization of a member
    /// keeps its long prefix and suffix inside `U` (condition 2, enumerated in
    /// a witnessing parabolic, which confines the letters of any minimal
    /// factorization).
    pub fn check_lemma41(&self, table: &PartialMulTable) -> Result<CheckReport> {
        let mut report = CheckReport::new();
        let n = self.len();
        let refl = self.reflection_members();

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.members[i].rlen);
        let mut factorizable = vec![false; n];
        let mut cond1 = Vec::new();
        for &x in &order {
            if self.members[x].rlen == 0 {
                factorizable[x] = true;
                continue;
            }
            factorizable[x] = refl
                .iter()
                .any(|&r| (0..n).any(|y| factorizable[y] && table.product(y, r) == Some(x)));
            if !factorizable[x] {
                cond1.push(violation(
                    "reflection-factorization",
                    &[&self.member_name(x)],
                    "member admits no length-additive factorization over R_U",
                ));
            }
        }
        report.condition("reflection-factorization", cond1, None);

        let mut cond2 = Vec::new();
        'outer: for x in 0..n {
            if self.members[x].rlen < 2 {
                continue;
            }
            let k = self.members[x].origins[0];
            let en = self.realization.enumerate_parabolic(&self.subsets[k])?;
            let membership = self.parabolic_membership(k)?;
            let refl_in_k: Vec<usize> =
                refl.iter().filter_map(|r| membership.get(r).copied()).collect();
            let mut fact_memo: HashMap<usize, bool> = HashMap::new();
            let x_en = membership[&x];
            for &r_en in &refl_in_k {
                // r as a last letter: strip on the right
                let y = en.mul(x_en, r_en);
                if en.rlen[y] + 1 == en.rlen[x_en]
                    && is_factorizable(&en, y, &refl_in_k, &mut fact_memo)
                    && self.index.get(&en.elements[y]).is_none()
                {
                    cond2.push(violation(
                        "prefix-suffix-closure",
                        &[
                            &self.member_name(x),
                            &self.realization.word_name(&en.words[r_en]),
                        ],
                        "minimal factorization prefix escapes U",
                    ));
                    break 'outer;
                }
                // r as a first letter: strip on the left
                let z = en.mul(r_en, x_en);
                if en.rlen[z] + 1 == en.rlen[x_en]
                    && is_factorizable(&en, z, &refl_in_k, &mut fact_memo)
                    && self.index.get(&en.elements[z]).is_none()
                {
                    cond2.push(violation(
                        "prefix-suffix-closure",
                        &[
                            &self.member_name(x),
                            &self.realization.word_name(&en.words[r_en]),
                        ],
                        "minimal factorization suffix escapes U",
                    ));
                    break 'outer;
                }
            }
        }
        report.condition("prefix-suffix-closure", cond2, None);
        Ok(report)
    }

    /// The six conditions guaranteeing the doubled poset is a lattice:
    /// reflection factorizations (1-2), joins for reflection pairs with a
    /// common bound (3), one-sided closure of reflection joins (4-5), and the
    /// mixed condition over reflection quadruples around a middle element (6).
    pub fn check_prop42(&self, table: &PartialMulTable) -> Result<CheckReport> {
        let mut report = self.check_lemma41(table)?;
        let n = self.len();
        let left = table.left_order()?;
        let right = table.right_order()?;
        let refl = self.reflection_members();

        let join_exists = |poset: &FinitePoset, a: usize, b: usize| -> bool {
            poset.join(a, b).found().is_some()
        };
        let has_common_upper = |poset: &FinitePoset, a: usize, b: usize| -> bool {
            !poset.up_set(a).and(poset.up_set(b)).is_empty()
        };

        let mut cond3 = Vec::new();
        for (i, &r1) in refl.iter().enumerate() {
            for &r2 in &refl[i + 1..] {
                if has_common_upper(&left, r1, r2) && !join_exists(&left, r1, r2) {
                    cond3.push(violation(
                        "reflection-pair-joins",
                        &[&self.member_name(r1), &self.member_name(r2)],
                        "common left upper bound but no left join",
                    ));
                }
                if has_common_upper(&right, r1, r2) && !join_exists(&right, r1, r2) {
                    cond3.push(violation(
                        "reflection-pair-joins",
                        &[&self.member_name(r1), &self.member_name(r2)],
                        "common right upper bound but no right join",
                    ));
                }
            }
        }
        cond3.truncate(1);
        report.condition("reflection-pair-joins", cond3, None);

        let mut cond4 = Vec::new();
        'c4: for (i, &u) in refl.iter().enumerate() {
            for &v in &refl[i + 1..] {
                if let Some(w) = left.join(u, v).found() {
                    for a in 0..n {
                        if table.product(a, u).is_some()
                            && table.product(a, v).is_some()
                            && table.product(a, w).is_none()
                        {
                            cond4.push(violation(
                                "left-join-closure-ru",
                                &[
                                    &self.member_name(a),
                                    &self.member_name(u),
                                    &self.member_name(v),
                                    &self.member_name(w),
                                ],
                                "a*u, a*v defined, w = join_L(u, v) with u, v in R_U, but a*w undefined",
                            ));
                            break 'c4;
                        }
                    }
                }
            }
        }
        report.condition("left-join-closure-ru", cond4, None);

        let mut cond5 = Vec::new();
        'c5: for (i, &u) in refl.iter().enumerate() {
            for &v in &refl[i + 1..] {
                if let Some(w) = right.join(u, v).found() {
                    for a in 0..n {
                        if table.product(u, a).is_some()
                            && table.product(v, a).is_some()
                            && table.product(w, a).is_none()
                        {
                            cond5.push(violation(
                                "right-join-closure-ru",
                                &[
                                    &self.member_name(a),
                                    &self.member_name(u),
                                    &self.member_name(v),
                                    &self.member_name(w),
                                ],
                                "u*a, v*a defined, w = join_R(u, v) with u, v in R_U, but w*a undefined",
                            ));
                            break 'c5;
                        }
                    }
                }
            }
        }
        report.condition("right-join-closure-ru", cond5, None);

        let nrefl = refl.len();
        let mut left_join_tab = vec![Bits::new(nrefl); nrefl];
        let mut right_join_tab = vec![Bits::new(nrefl); nrefl];
        for i in 0..nrefl {
            for j in 0..nrefl {
                if join_exists(&left, refl[i], refl[j]) {
                    left_join_tab[i].set(j);
                }
                if join_exists(&right, refl[i], refl[j]) {
                    right_join_tab[i].set(j);
                }
            }
        }
        let mut cond6 = Vec::new();
        'c6: for x in 0..n {
            let a_list: Vec<(usize, usize)> = refl
                .iter()
                .enumerate()
                .filter_map(|(ai, &a)| table.product(a, x).map(|ax| (ai, ax)))
                .collect();
            if a_list.len() < 2 {
                continue;
            }
            let rows: Vec<Bits> = a_list
                .iter()
                .map(|&(_, ax)| {
                    let mut bits = Bits::new(nrefl);
                    for (ui, &u) in refl.iter().enumerate() {
                        if table.product(ax, u).is_some() {
                            bits.set(ui);
                        }
                    }
                    bits
                })
                .collect();
            for p in 0..a_list.len() {
                for q in (p + 1)..a_list.len() {
                    let (ai, _) = a_list[p];
                    let (bi, _) = a_list[q];
                    if right_join_tab[ai].test(bi) {
                        continue;
                    }
                    let common = rows[p].and(&rows[q]);
                    if common.count() < 2 {
                        continue;
                    }
                    let us: Vec<usize> = common.iter().collect();
                    for (s, &ui) in us.iter().enumerate() {
                        for &vi in &us[s + 1..] {
                            if !left_join_tab[ui].test(vi) {
                                cond6.push(violation(
                                    "mixed-join-condition-ru",
                                    &[
                                        &self.member_name(refl[ai]),
                                        &self.member_name(refl[bi]),
                                        &self.member_name(refl[ui]),
                                        &self.member_name(refl[vi]),
                                        &self.member_name(x),
                                    ],
                                    "a*x*u, a*x*v, b*x*u, b*x*v defined but neither a, b have a right join nor u, v a left join",
                                ));
                                break 'c6;
                            }
                        }
                    }
                }
            }
        }
        report.condition("mixed-join-condition-ru", cond6, None);
        Ok(report)
    }

    /// Support additivity across defined products: `Supp(ab) = Supp(a) u Supp(b)`.
    pub fn check_support_additivity(&self, table: &PartialMulTable) -> CheckReport {
        let mut report = CheckReport::new();
        let mut violations = Vec::new();
        for (a, b, c) in table.defined_pairs() {
            let mut expected: Vec<usize> = self.members[a]
                .support
                .iter()
                .chain(self.members[b].support.iter())
                .copied()
                .collect();
            expected.sort();
            expected.dedup();
            if expected != self.members[c].support {
                violations.push(violation(
                    "support-additivity",
                    &[&self.member_name(a), &self.member_name(b)],
                    "Supp(ab) != Supp(a) u Supp(b)",
                ));
                break;
            }
        }
        report.condition("support-additivity", violations, None);
        report
    }

    pub fn to_ucert(&self, table: &PartialMulTable) -> UCertFile {
        UCertFile {
            version: 1,
            vertices: self.realization.graph().vertex_names().to_vec(),
            subsets: self
                .subsets
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|&v| self.realization.graph().vertex_name(v).to_string())
                        .collect()
                })
                .collect(),
            members: (0..self.len())
                .map(|i| UCertMember {
                    id: self.member_name(i),
                    word: self.members[i]
                        .word
                        .iter()
                        .map(|&g| self.realization.graph().vertex_name(g).to_string())
                        .collect(),
                    rlen: self.members[i].rlen,
                    origins: self.members[i].origins.clone(),
                })
                .collect(),
            products: table.defined_pairs().collect(),
        }
    }
}

fn is_factorizable(
    en: &Enumerated,
    y: usize,
    refl_in_k: &[usize],
    memo: &mut HashMap<usize, bool>,
) -> bool {
    if en.rlen[y] == 0 {
        return true;
    }
    if let Some(&v) = memo.get(&y) {
        return v;
    }
    memo.insert(y, false); // lengths strictly decrease, so no true cycles
    let ok = refl_in_k.iter().any(|&r_en| {
        let z = en.mul(y, r_en);
        en.rlen[z] + 1 == en.rlen[y] && is_factorizable(en, z, refl_in_k, memo)
    });
    memo.insert(y, ok);
    ok
}

// ---------------------------------------------------------------------------
// graph-level checks and builders
// ---------------------------------------------------------------------------

/// Cyclic type: the Dynkin diagram is a single cycle through all vertices and
/// every vertex-deleted subset is spherical.
pub fn is_cyclic_type(graph: &crate::coxeter::CoxeterGraph) -> bool {
    cyclic_subset(graph, &(0..graph.rank()).collect::<Vec<_>>())
}

/// The cyclic-type test on an induced subset.
fn cyclic_subset(graph: &crate::coxeter::CoxeterGraph, subset: &[usize]) -> bool {
    let n = subset.len();
    if n < 3 {
        return false;
    }
    for &v in subset {
        let deg = subset
            .iter()
            .filter(|&&w| w != v && graph.dynkin_adjacent(v, w))
            .count();
        if deg != 2 {
            return false;
        }
    }
    if graph.irreducible_components(subset).len() != 1 {
        return false;
    }
    subset.iter().all(|&v| {
        let rest: Vec<usize> = subset.iter().copied().filter(|&w| w != v).collect();
        graph.is_spherical(&rest)
    })
}

/// The vertex sequence of the Dynkin cycle, starting at vertex 0 and
/// following the input orientation when one is given.
pub fn cycle_order(graph: &crate::coxeter::CoxeterGraph) -> Result<Vec<usize>> {
    if !is_cyclic_type(graph) {
        return Err(CoreError::InvalidInput("graph is not of cyclic type".into()));
    }
    let n = graph.rank();
    let start = 0usize;
    let nbrs: Vec<usize> = (0..n)
        .filter(|&v| v != start && graph.dynkin_adjacent(start, v))
        .collect();
    let next = match graph.oriented(start, nbrs[0]) {
        Some((f, t)) if f == start => t,
        _ => match graph.oriented(start, nbrs[1]) {
            Some((f, t)) if f == start => t,
            _ => nbrs[0].min(nbrs[1]),
        },
    };
    let mut order = vec![start, next];
    while order.len() < n {
        let cur = *order.last().unwrap();
        let prev = order[order.len() - 2];
        let next = (0..n)
            .find(|&v| v != prev && v != cur && graph.dynkin_adjacent(cur, v))
            .ok_or_else(|| CoreError::Internal("cycle walk broke".into()))?;
        order.push(next);
    }
    Ok(order)
}

/// Builds `U` for a cyclic-type graph: the union of the dual intervals of the
/// vertex-deleted parabolics under the consistent cyclic orientation. Cycle
/// edges without an input orientation get the walk direction.
pub fn build_u_cyclic(graph: crate::coxeter::CoxeterGraph) -> Result<UConstruction> {
    let order = cycle_order(&graph)?;
    let n = graph.rank();
    let mut g = graph;
    for i in 0..n {
        let a = order[i];
        let b = order[(i + 1) % n];
        match g.oriented(a, b) {
            None => g.orient_edge(a, b)?,
            Some((f, _)) if f == a => {}
            Some(_) => {
                return Err(CoreError::InvalidInput(
                    "input orientation is not consistent around the cycle".into(),
                ))
            }
        }
    }
    let mut subsets = Vec::new();
    for i in 0..n {
        let del = order[i];
        let subset: Vec<usize> = (0..n).filter(|&v| v != del).collect();
        subsets.push(subset);
    }
    let realization = Realization::new(g)?;
    UConstruction::build(realization, subsets)
}

/// Builds `U` for a glued graph: the union of `[1, delta_I]` over the maximal
/// spherical subsets (which exhausts the union over all spherical subsets
/// whenever the nested-compatibility check passes).
pub fn build_u_glued(realization: Realization) -> Result<UConstruction> {
    let subsets = realization.graph().maximal_spherical_subsets();
    UConstruction::build(realization, subsets)
}

/// The four graph-level hypotheses of the gluing criterion: complete
/// subgraphs decompose as cyclic-times-spherical joins, commuting complements
/// of cyclic subgraphs are spherical, the orientation is consistent on every
/// cyclic circle, and orientation-trapped 4-cycles have diagonals.
pub fn check_thm63_graph(graph: &crate::coxeter::CoxeterGraph) -> CheckReport {
    let mut report = CheckReport::new();
    let n = graph.rank();
    let names = graph.vertex_names();

    let mut cliques: Vec<Vec<usize>> = vec![];
    let mut frontier: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in frontier {
            cliques.push(c.clone());
            let last = *c.last().unwrap();
            for v in (last + 1)..n {
                if c.iter().all(|&u| graph.label(u, v).is_some()) {
                    let mut c2 = c.clone();
                    c2.push(v);
                    next.push(c2);
                }
            }
        }
        frontier = next;
    }

    let mut decomp = Vec::new();
    for k in &cliques {
        let comps = graph.irreducible_components(k);
        let nonspherical: Vec<&Vec<usize>> =
            comps.iter().filter(|c| !graph.is_spherical(c)).collect();
        let ok = match nonspherical.len() {
            0 => true,
            1 => cyclic_subset(graph, nonspherical[0]),
            _ => false,
        };
        if !ok {
            decomp.push(Violation {
                condition: "complete-subgraph-decomposition".into(),
                witness: k.iter().map(|&v| names[v].clone()).collect(),
                detail:
                    "complete subgraph is not a join of a cyclic type and a spherical type graph"
                        .into(),
            });
        }
    }
    decomp.truncate(1);
    report.condition("complete-subgraph-decomposition", decomp, None);

    let mut cyclic_subsets: Vec<Vec<usize>> = Vec::new();
    if n <= 24 {
        for mask in 1u64..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if subset.len() >= 3 && cyclic_subset(graph, &subset) {
                cyclic_subsets.push(subset);
            }
        }
    }

    let mut perp_viol = Vec::new();
    for lam in &cyclic_subsets {
        let perp: Vec<usize> = (0..n)
            .filter(|&v| !lam.contains(&v) && lam.iter().all(|&u| graph.commutes(u, v)))
            .collect();
        if !graph.is_spherical(&perp) {
            perp_viol.push(Violation {
                condition: "cyclic-perp-spherical".into(),
                witness: lam.iter().map(|&v| names[v].clone()).collect(),
                detail: "the commuting complement of a cyclic type subgraph is not spherical"
                    .into(),
            });
        }
    }
    perp_viol.truncate(1);
    report.condition("cyclic-perp-spherical", perp_viol, None);

    let mut orient_viol = Vec::new();
    for lam in &cyclic_subsets {
        let mut indeg: HashMap<usize, usize> = lam.iter().map(|&v| (v, 0)).collect();
        let mut outdeg: HashMap<usize, usize> = lam.iter().map(|&v| (v, 0)).collect();
        let mut missing = false;
        for (i, &a) in lam.iter().enumerate() {
            for &b in &lam[i + 1..] {
                if graph.dynkin_adjacent(a, b) {
                    match graph.oriented(a, b) {
                        Some((f, t)) => {
                            *outdeg.get_mut(&f).unwrap() += 1;
                            *indeg.get_mut(&t).unwrap() += 1;
                        }
                        None => missing = true,
                    }
                }
            }
        }
        let consistent = !missing && lam.iter().all(|v| indeg[v] == 1 && outdeg[v] == 1);
        if !consistent {
            orient_viol.push(Violation {
                condition: "consistent-cycle-orientation".into(),
                witness: lam.iter().map(|&v| names[v].clone()).collect(),
                detail: "orientation does not restrict to a consistent orientation of the circle"
                    .into(),
            });
        }
    }
    orient_viol.truncate(1);
    report.condition("consistent-cycle-orientation", orient_viol, None);

    let mut cycle_viol = Vec::new();
    'cycles: for x1 in 0..n {
        for x2 in (x1 + 1)..n {
            if graph.label(x1, x2).is_some() {
                continue;
            }
            for y1 in 0..n {
                for y2 in (y1 + 1)..n {
                    if y1 == x1 || y1 == x2 || y2 == x1 || y2 == x2 {
                        continue;
                    }
                    let edges = graph.label(x1, y1).is_some()
                        && graph.label(y1, x2).is_some()
                        && graph.label(x2, y2).is_some()
                        && graph.label(y2, x1).is_some();
                    if !edges || graph.label(y1, y2).is_some() {
                        continue;
                    }
                    let towards = |x: usize, y: usize| -> bool {
                        !graph.is_large_edge(x, y) || graph.oriented(x, y) == Some((y, x))
                    };
                    let hyp_x =
                        towards(x1, y1) && towards(x1, y2) && towards(x2, y1) && towards(x2, y2);
                    let hyp_y =
                        towards(y1, x1) && towards(y1, x2) && towards(y2, x1) && towards(y2, x2);
                    if hyp_x || hyp_y {
                        cycle_viol.push(Violation {
                            condition: "four-cycle-diagonal".into(),
                            witness: vec![
                                names[x1].clone(),
                                names[y1].clone(),
                                names[x2].clone(),
                                names[y2].clone(),
                            ],
                            detail:
                                "4-cycle satisfies the orientation hypothesis but has no diagonal"
                                    .into(),
                        });
                        break 'cycles;
                    }
                }
            }
        }
    }
    report.condition("four-cycle-diagonal", cycle_viol, None);

    report
}

/// Nested compatibility: for all spherical `T' < T`, the compatible Coxeter
/// element of `T'` is a dual-order prefix of the one of `T`.
pub fn check_thm43_compat(realization: &Realization) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let mut violations = Vec::new();
    let spherical = realization.graph().spherical_subsets();
    'outer: for t in &spherical {
        if t.is_empty() {
            continue;
        }
        let en = realization.enumerate_parabolic(t)?;
        let delta_t = en.apply_word(0, &realization.compatible_coxeter_word(t)?);
        let k = t.len();
        for mask in 0u64..(1 << k) {
            let tp: Vec<usize> =
                (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| t[i]).collect();
            if tp.len() == k || !realization.graph().is_spherical(&tp) {
                continue;
            }
            let delta_tp = en.apply_word(0, &realization.compatible_coxeter_word(&tp)?);
            let q = en.left_quotient(delta_tp, delta_t);
            if en.rlen[delta_tp] + en.rlen[q] != en.rlen[delta_t] {
                let names = realization.graph().vertex_names();
                violations.push(Violation {
                    condition: "nested-coxeter-compatibility".into(),
                    witness: tp.iter().chain(t.iter()).map(|&v| names[v].clone()).collect(),
                    detail: "w_{T'} is not a dual-order prefix of w_T".into(),
                });
                break 'outer;
            }
        }
    }
    report.condition("nested-coxeter-compatibility", violations, None);
    Ok(report)
}

/// Brute-force support-nesting check on a linear spherical diagram with
/// `delta = s_1 ... s_n`: for reflections `u, v` in the dual interval with
/// `u * v` defined, if the vertex before `min(Supp(u))` lies in `Supp(v)`
/// then `Supp(u)` is contained in `Supp(v)`; extended to arbitrary interval
/// members with irreducible supports.
pub fn verify_lemma54(realization: &Realization) -> Result<CheckReport> {
    let n = realization.graph().rank();
    let subset: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = realization.graph().dynkin_adjacent(i, j);
            if adjacent != (j == i + 1) {
                return Err(CoreError::InvalidInput(
                    "graph is not a linear diagram in input vertex order".into(),
                ));
            }
        }
    }
    if !realization.graph().is_spherical(&subset) {
        return Err(CoreError::InvalidInput("diagram is not spherical".into()));
    }
    let en = realization.enumerate_parabolic(&subset)?;
    let delta = en.apply_word(0, &subset);
    let members = realization.dual_interval(&en, delta);
    let member_set: HashSet<usize> = members.iter().copied().collect();
    let supports: HashMap<usize, Vec<usize>> = members
        .iter()
        .map(|&u| {
            let mut s = en.words[u].clone();
            s.sort();
            s.dedup();
            (u, s)
        })
        .collect();
    let irreducible: HashMap<usize, bool> = members
        .iter()
        .map(|&u| (u, realization.graph().irreducible_components(&supports[&u]).len() == 1))
        .collect();

    let mut report = CheckReport::new();
    let mut refl_viol = Vec::new();
    let mut ext_viol = Vec::new();
    let mut checked_pairs = 0usize;
    for &u in &members {
        if en.rlen[u] == 0 {
            continue;
        }
        for &v in &members {
            if en.rlen[v] == 0 {
                continue;
            }
            let uv = en.mul(u, v);
            if !member_set.contains(&uv) || en.rlen[uv] != en.rlen[u] + en.rlen[v] {
                continue;
            }
            let i_supp = &supports[&u];
            let j_supp = &supports[&v];
            let min_i = i_supp[0];
            let hypothesis = min_i >= 1 && j_supp.contains(&(min_i - 1));
            if !hypothesis {
                continue;
            }
            let nested = i_supp.iter().all(|x| j_supp.contains(x));
            if en.rlen[u] == 1 && en.rlen[v] == 1 {
                checked_pairs += 1;
                if !nested {
                    refl_viol.push(violation(
                        "support-nesting-reflections",
                        &[
                            &realization.word_name(&en.words[u]),
                            &realization.word_name(&en.words[v]),
                        ],
                        "min(Supp(u)) - 1 in Supp(v) but Supp(u) not contained in Supp(v)",
                    ));
                }
            } else if irreducible[&u] && irreducible[&v] && !nested {
                ext_viol.push(violation(
                    "support-nesting-irreducible",
                    &[
                        &realization.word_name(&en.words[u]),
                        &realization.word_name(&en.words[v]),
                    ],
                    "irreducible-support extension fails",
                ));
            }
        }
    }
    refl_viol.truncate(1);
    ext_viol.truncate(1);
    report.condition(
        "support-nesting-reflections",
        refl_viol,
        Some(format!("{checked_pairs} reflection pairs with the hypothesis checked")),
    );
    report.condition("support-nesting-irreducible", ext_viol, None);
    Ok(report)
}

/// Brute-force orientation dichotomy on a spherical oriented diagram: for
/// reflections `r1, r2` in the dual interval with `r1 * r2` inside it, any
/// support letters `s1` of `r1` only and `s2` of `r2` only either commute or
/// carry an oriented edge from `s1` to `s2`.
pub fn verify_lemma62(realization: &Realization) -> Result<CheckReport> {
    let n = realization.graph().rank();
    let subset: Vec<usize> = (0..n).collect();
    if !realization.graph().is_spherical(&subset) {
        return Err(CoreError::InvalidInput("diagram is not spherical".into()));
    }
    let en = realization.enumerate_parabolic(&subset)?;
    let delta_word = realization.compatible_coxeter_word(&subset)?;
    let delta = en.apply_word(0, &delta_word);
    let members = realization.dual_interval(&en, delta);
    let member_set: HashSet<usize> = members.iter().copied().collect();
    let refl: Vec<usize> = members.iter().copied().filter(|&u| en.rlen[u] == 1).collect();
    let mut report = CheckReport::new();
    let mut violations = Vec::new();
    'outer: for &r1 in &refl {
        let s1_supp: HashSet<usize> = en.words[r1].iter().copied().collect();
        for &r2 in &refl {
            let prod = en.mul(r1, r2);
            if !member_set.contains(&prod) || en.rlen[prod] != 2 {
                continue;
            }
            let s2_supp: HashSet<usize> = en.words[r2].iter().copied().collect();
            for &s1 in s1_supp.difference(&s2_supp) {
                for &s2 in s2_supp.difference(&s1_supp) {
                    let ok = realization.graph().commutes(s1, s2)
                        || realization.graph().oriented(s1, s2) == Some((s1, s2));
                    if !ok {
                        let names = realization.graph().vertex_names();
                        violations.push(violation(
                            "orientation-dichotomy",
                            &[
                                &realization.word_name(&en.words[r1]),
                                &realization.word_name(&en.words[r2]),
                                &names[s1],
                                &names[s2],
                            ],
                            "letters neither commute nor carry an oriented edge s1 -> s2",
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.condition("orientation-dichotomy", violations, None);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{cycle_graph, path_graph, CoxeterGraph};

    pub(crate) fn square_raag() -> CoxeterGraph {
        let mut g =
            CoxeterGraph::new(["a", "u", "b", "v"].iter().map(|s| s.to_string()).collect());
        g.add_edge(0, 1, 2).unwrap();
        g.add_edge(1, 2, 2).unwrap();
        g.add_edge(2, 3, 2).unwrap();
        g.add_edge(3, 0, 2).unwrap();
        g
    }

    #[test]
    fn cyclic_type_recognition() {
        assert!(is_cyclic_type(&cycle_graph(&[3, 3, 3, 3])));
        assert!(is_cyclic_type(&cycle_graph(&[3, 3, 3, 4])));
        assert!(is_cyclic_type(&cycle_graph(&[3, 3, 3])));
        assert!(!is_cyclic_type(&cycle_graph(&[4, 4, 4, 4])));
        assert!(!is_cyclic_type(&path_graph(&[3, 3])));
    }

    #[test]
    fn triangle_u_size() {
        // three rank-2 intervals of size 5 overlapping in e and the simple
        // reflections: 10 elements in total
        let u = build_u_cyclic(cycle_graph(&[3, 3, 3])).unwrap();
        assert_eq!(u.len(), 10);
        let t = u.partial_mul().unwrap();
        assert!(t.verify_axioms().passed());
        assert!(t.check_theorem39().unwrap().passed());
        assert!(u.check_lemma41(&t).unwrap().passed());
        assert!(u.check_prop42(&t).unwrap().passed());
        assert!(u.check_support_additivity(&t).passed());
        let e = t.build_e_checked().unwrap();
        assert!(e.poset.find_bowtie().is_none());
    }

    #[test]
    fn a2_interval_products() {
        let g = path_graph(&[3]);
        let r = Realization::new(g).unwrap();
        let u = UConstruction::build(r, vec![vec![0, 1]]).unwrap();
        let t = u.partial_mul().unwrap();
        let s1 = t.index_of("s1").unwrap();
        let s2 = t.index_of("s2").unwrap();
        let delta = t.index_of("s1.s2").unwrap();
        assert_eq!(t.product(s1, s2), Some(delta));
        assert_eq!(t.product(s2, s1), None);
    }

    #[test]
    fn square_raag_negative() {
        let g = square_raag();
        let graph_report = check_thm63_graph(&g);
        assert!(!graph_report.passed());
        assert!(graph_report
            .conditions
            .iter()
            .any(|c| c.id == "four-cycle-diagonal" && !c.violations.is_empty()));
        let r = Realization::new(g).unwrap();
        let u = build_u_glued(r).unwrap();
        assert_eq!(u.len(), 9);
        let t = u.partial_mul().unwrap();
        assert!(t.verify_axioms().passed());
        let r39 = t.check_theorem39().unwrap();
        assert!(!r39.passed());
        let viol = r39
            .conditions
            .iter()
            .find(|c| c.id == "mixed-join-condition")
            .unwrap();
        assert!(!viol.violations.is_empty());
        let p42 = u.check_prop42(&t).unwrap();
        assert!(!p42.passed());
        let e = t.build_e_checked().unwrap();
        assert!(e.poset.find_bowtie().is_some());
    }

    #[test]
    fn free_graph_u_is_generators() {
        let g = CoxeterGraph::new(vec!["a".into(), "b".into(), "c".into()]);
        let r = Realization::new(g).unwrap();
        let u = build_u_glued(r).unwrap();
        assert_eq!(u.len(), 4);
        let t = u.partial_mul().unwrap();
        assert!(t.check_theorem39().unwrap().passed());
    }

    #[test]
    fn thm43_compat_on_cyclic() {
        let u = build_u_cyclic(cycle_graph(&[3, 3, 3, 4])).unwrap();
        let compat = check_thm43_compat(&u.realization).unwrap();
        assert!(compat.passed());
    }

    #[test]
    fn lemma54_small() {
        let g = path_graph(&[3, 4]); // B_3
        let r = Realization::new(g).unwrap();
        let rep = verify_lemma54(&r).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn lemma62_a3_all_orientations() {
        for o1 in [true, false] {
            for o2 in [true, false] {
                let names: Vec<String> =
                    ["s1", "s2", "s3"].iter().map(|s| s.to_string()).collect();
                let mut g = CoxeterGraph::new(names);
                g.add_edge(0, 1, 3).unwrap();
                g.add_edge(1, 2, 3).unwrap();
                g.add_edge(0, 2, 2).unwrap();
                if o1 {
                    g.orient_edge(0, 1).unwrap();
                } else {
                    g.orient_edge(1, 0).unwrap();
                }
                if o2 {
                    g.orient_edge(1, 2).unwrap();
                } else {
                    g.orient_edge(2, 1).unwrap();
                }
                let r = Realization::new(g).unwrap();
                let rep = verify_lemma62(&r).unwrap();
                assert!(rep.passed(), "orientation ({o1}, {o2})");
            }
        }
    }
}
