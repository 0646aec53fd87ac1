//! Positive-presentation checkers and builders: the five-bullet small
//! cancellation criterion with link girth, positive square presentations with
//! typed link cycles, the restricted systolic shape check, and the canonical
//! example presentations (surface groups and the hub family `G_{n,m}`).

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::partialmul::PartialMulTable;
use crate::report::{violation, CheckReport};
use crate::{CoreError, Result};

/// A presentation whose relations equate nonempty positive words.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PositivePresentation {
    pub generators: Vec<String>,
    /// Words as arrays of generator names.
    pub relations: Vec<(Vec<String>, Vec<String>)>,
}

/// Internal: words as generator indices.
#[derive(Debug, Clone)]
struct Indexed {
    n_gens: usize,
    relations: Vec<(Vec<usize>, Vec<usize>)>,
}

/// The Whitehead link of the presentation complex. Vertices are edge germs
/// `g^out` (vertex `2g`) and `g^in` (vertex `2g+1`). Each relation `r = r'`
/// contributes one corner per passage of the 2-cell boundary through the
/// vertex: `(x^in, y^out)` for consecutive letters `x y` of either side,
/// `(first(r)^out, first(r')^out)` closing the shared start and
/// `(last(r)^in, last(r')^in)` closing the shared end.
#[derive(Debug, Clone)]
pub struct LinkGraph {
    pub n_gens: usize,
    pub edges: Vec<(usize, usize)>,
}

fn v_out(g: usize) -> usize {
    2 * g
}

fn v_in(g: usize) -> usize {
    2 * g + 1
}

fn is_out(v: usize) -> bool {
    v % 2 == 0
}

impl LinkGraph {
    pub fn vertex_count(&self) -> usize {
        2 * self.n_gens
    }

    pub fn vertex_name(&self, v: usize, gens: &[String]) -> String {
        format!("{}^{}", gens[v / 2], if is_out(v) { "out" } else { "in" })
    }

    /// Shortest cycle length in the multigraph: self-loops are 1-cycles,
    /// parallel edges 2-cycles; otherwise BFS avoiding the starting edge
    /// instance. `None` when the link is a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        let mut multiplicity: HashMap<(usize, usize), usize> = HashMap::new();
        for &(a, b) in &self.edges {
            if a == b {
                return Some(1);
            }
            let key = (a.min(b), a.max(b));
            *multiplicity.entry(key).or_insert(0) += 1;
        }
        if multiplicity.values().any(|&m| m >= 2) {
            return Some(2);
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (ei, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, ei));
            adj[b].push((a, ei));
        }
        for (ei, &(a, b)) in self.edges.iter().enumerate() {
            // shortest a-b path avoiding edge ei
            let mut dist = vec![usize::MAX; n];
            dist[a] = 0;
            let mut q = VecDeque::new();
            q.push_back(a);
            while let Some(x) = q.pop_front() {
                if x == b {
                    break;
                }
                for &(y, e) in &adj[x] {
                    if e != ei && dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        q.push_back(y);
                    }
                }
            }
            if dist[b] != usize::MAX {
                let cyc = dist[b] + 1;
                if best.map_or(true, |g| cyc < g) {
                    best = Some(cyc);
                }
            }
        }
        best
    }
}

impl PositivePresentation {
    pub fn new(
        generators: Vec<String>,
        relations: Vec<(Vec<String>, Vec<String>)>,
    ) -> Result<Self> {
        let p = PositivePresentation { generators, relations };
        p.index()?;
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct File {
            generators: Vec<String>,
            relations: Vec<(Vec<String>, Vec<String>)>,
        }
        let f: File = serde_json::from_str(text)?;
        Self::new(f.generators, f.relations)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    fn index(&self) -> Result<Indexed> {
        let lookup: HashMap<&str, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), i))
            .collect();
        if lookup.len() != self.generators.len() {
            return Err(CoreError::InvalidInput("duplicate generator names".into()));
        }
        let mut relations = Vec::new();
        for (lhs, rhs) in &self.relations {
            if lhs.is_empty() || rhs.is_empty() {
                return Err(CoreError::InvalidInput(
                    "relation words must be nonempty positive words".into(),
                ));
            }
            let conv = |w: &[String]| -> Result<Vec<usize>> {
                w.iter()
                    .map(|l| {
                        lookup.get(l.as_str()).copied().ok_or_else(|| {
                            CoreError::InvalidInput(format!("unknown letter {l}"))
                        })
                    })
                    .collect()
            };
            relations.push((conv(lhs)?, conv(rhs)?));
        }
        Ok(Indexed { n_gens: self.generators.len(), relations })
    }

    /// The Whitehead link of the presentation complex.
    pub fn link_graph(&self) -> Result<LinkGraph> {
        let ix = self.index()?;
        let mut edges = Vec::new();
        for (r, rp) in &ix.relations {
            for side in [r, rp] {
                for w in side.windows(2) {
                    edges.push((v_in(w[0]), v_out(w[1])));
                }
            }
            edges.push((v_out(r[0]), v_out(rp[0])));
            edges.push((v_in(*r.last().unwrap()), v_in(*rp.last().unwrap())));
        }
        Ok(LinkGraph { n_gens: ix.n_gens, edges })
    }

    /// The five bullets: positivity without common prefix/suffix, no relator
    /// side occurring inside another, unique first- and last-letter pairs,
    /// and link girth at least 5.
    pub fn check_t5(&self) -> Result<CheckReport> {
        let ix = self.index()?;
        let mut report = CheckReport::new();

        let mut shape = Vec::new();
        for (k, (r, rp)) in ix.relations.iter().enumerate() {
            if r.first() == rp.first() {
                shape.push(violation(
                    "no-common-prefix",
                    &[&format!("relation {k}")],
                    "the two sides share their first letter",
                ));
            }
            if r.last() == rp.last() {
                shape.push(violation(
                    "no-common-suffix",
                    &[&format!("relation {k}")],
                    "the two sides share their last letter",
                ));
            }
        }
        report.condition("no-common-prefix-or-suffix", shape, None);

        let sides: Vec<&Vec<usize>> = ix
            .relations
            .iter()
            .flat_map(|(r, rp)| [r, rp])
            .collect();
        let mut sub = Vec::new();
        for (i, a) in sides.iter().enumerate() {
            for (j, b) in sides.iter().enumerate() {
                if i != j && b.len() >= a.len() && b.windows(a.len()).any(|w| w == a.as_slice())
                {
                    sub.push(violation(
                        "no-side-inside-another",
                        &[
                            &self.word_str_ix(a),
                            &self.word_str_ix(b),
                        ],
                        "one relator side occurs as a subword of another",
                    ));
                }
            }
        }
        report.condition("no-side-inside-another", sub, None);

        let mut firsts: HashMap<(usize, usize), usize> = HashMap::new();
        let mut lasts: HashMap<(usize, usize), usize> = HashMap::new();
        let mut first_viol = Vec::new();
        let mut last_viol = Vec::new();
        for (k, (r, rp)) in ix.relations.iter().enumerate() {
            let f = (*r.first().unwrap()).min(*rp.first().unwrap());
            let g = (*r.first().unwrap()).max(*rp.first().unwrap());
            if let Some(prev) = firsts.insert((f, g), k) {
                first_viol.push(violation(
                    "unique-first-letter-pair",
                    &[&self.generators[f], &self.generators[g]],
                    &format!("relations {prev} and {k} share the first-letter pair"),
                ));
            }
            let f = (*r.last().unwrap()).min(*rp.last().unwrap());
            let g = (*r.last().unwrap()).max(*rp.last().unwrap());
            if let Some(prev) = lasts.insert((f, g), k) {
                last_viol.push(violation(
                    "unique-last-letter-pair",
                    &[&self.generators[f], &self.generators[g]],
                    &format!("relations {prev} and {k} share the last-letter pair"),
                ));
            }
        }
        report.condition("unique-first-letter-pair", first_viol, None);
        report.condition("unique-last-letter-pair", last_viol, None);

        let link = self.link_graph()?;
        let girth = link.girth();
        let mut girth_viol = Vec::new();
        if let Some(g) = girth {
            if g < 5 {
                girth_viol.push(violation(
                    "link-girth",
                    &[&g.to_string()],
                    &format!("link girth {g} < 5"),
                ));
            }
        }
        report.condition(
            "link-girth",
            girth_viol,
            Some(match girth {
                Some(g) => format!("girth {g}"),
                None => "acyclic link".to_string(),
            }),
        );

        Ok(report)
    }

    fn word_str_ix(&self, w: &[usize]) -> String {
        w.iter()
            .map(|&i| self.generators[i].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Identity id that cannot collide with a generator name.
    fn identity_id(&self) -> String {
        let mut id = "e".to_string();
        while self.generators.contains(&id) {
            id.push('_');
        }
        id
    }

    /// The subword table: elements are subwords of relator sides (plus every
    /// generator and the empty word), modulo identifying the two sides of
    /// each relation; the partial product is concatenation when the result is
    /// again a subword and neither operand is a full relator side.
    pub fn build_u_t5(&self) -> Result<PartialMulTable> {
        let ix = self.index()?;
        let sides: Vec<Vec<usize>> = ix
            .relations
            .iter()
            .flat_map(|(r, rp)| [r.clone(), rp.clone()])
            .collect();
        let mut subwords: HashSet<Vec<usize>> = HashSet::new();
        for g in 0..ix.n_gens {
            subwords.insert(vec![g]);
        }
        for s in &sides {
            for i in 0..s.len() {
                for j in (i + 1)..=s.len() {
                    subwords.insert(s[i..j].to_vec());
                }
            }
        }
        // classes: union-find over side words per relation
        let side_set: HashSet<Vec<usize>> = sides.iter().cloned().collect();
        let mut class_rep: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for w in &subwords {
            class_rep.insert(w.clone(), w.clone());
        }
        fn find(rep: &HashMap<Vec<usize>, Vec<usize>>, w: &Vec<usize>) -> Vec<usize> {
            let mut cur = w.clone();
            loop {
                let next = rep[&cur].clone();
                if next == cur {
                    return cur;
                }
                cur = next;
            }
        }
        for (r, rp) in &ix.relations {
            let ra = find(&class_rep, r);
            let rb = find(&class_rep, rp);
            if ra != rb {
                let target = ra.clone().min(rb.clone());
                let source = if target == ra { rb } else { ra };
                class_rep.insert(source, target);
            }
        }
        let canon = |w: &Vec<usize>| find(&class_rep, w);

        // element list: identity first, then canonical reps sorted for determinism
        let mut reps: Vec<Vec<usize>> = subwords.iter().map(&canon).collect::<HashSet<_>>()
            .into_iter()
            .collect();
        reps.sort();
        let e_id = self.identity_id();
        let mut ids = vec![e_id];
        ids.extend(reps.iter().map(|w| self.word_str_ix(w)));
        let rep_index: HashMap<Vec<usize>, usize> = reps
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i + 1))
            .collect();

        let mut products: Vec<(usize, usize, usize)> = Vec::new();
        let total = ids.len();
        for i in 0..total {
            products.push((0, i, i));
            if i != 0 {
                products.push((i, 0, i));
            }
        }
        for (i, u) in reps.iter().enumerate() {
            if side_set.contains(u) {
                continue;
            }
            for (j, v) in reps.iter().enumerate() {
                if side_set.contains(v) {
                    continue;
                }
                let mut cat = u.clone();
                cat.extend_from_slice(v);
                if subwords.contains(&cat) {
                    let w = canon(&cat);
                    products.push((i + 1, j + 1, rep_index[&w]));
                }
            }
        }
        PartialMulTable::from_indexed(ids, 0, &products)
    }

    /// Shape guard for square presentations: every relation `ab = cd`.
    fn square_indexed(&self) -> Result<Indexed> {
        let ix = self.index()?;
        for (k, (r, rp)) in ix.relations.iter().enumerate() {
            if r.len() != 2 || rp.len() != 2 {
                return Err(CoreError::InvalidInput(format!(
                    "relation {k} is not a positive square relation (sides of length 2)"
                )));
            }
        }
        Ok(ix)
    }

    /// Typed-cycle scan of the link for square presentations: no embedded
    /// 2-cycles of type (o,o) or (i,i), no embedded 3-cycles of type (o,o,i)
    /// or (i,i,o), no embedded 4-cycles of type (o,i,o,i). Self-loops at a
    /// germ count as degenerate 2-cycles of its type.
    pub fn check_square(&self) -> Result<CheckReport> {
        self.square_indexed()?;
        let link = self.link_graph()?;
        let nv = link.vertex_count();
        let mut report = CheckReport::new();
        let names: Vec<String> = (0..nv).map(|v| link.vertex_name(v, &self.generators)).collect();

        let mut two = Vec::new();
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for &(a, b) in &link.edges {
            if a == b {
                let ty = if is_out(a) { "(o,o)" } else { "(i,i)" };
                two.push(violation(
                    "two-cycle",
                    &[&names[a]],
                    &format!("self-loop counts as a degenerate 2-cycle of type {ty}"),
                ));
                continue;
            }
            let key = (a.min(b), a.max(b));
            *seen.entry(key).or_insert(0) += 1;
        }
        for (&(a, b), &m) in &seen {
            if m >= 2 && is_out(a) == is_out(b) {
                let ty = if is_out(a) { "(o,o)" } else { "(i,i)" };
                two.push(violation(
                    "two-cycle",
                    &[&names[a], &names[b]],
                    &format!("{m} parallel edges form a 2-cycle of type {ty}"),
                ));
            }
        }
        two.sort_by(|a, b| a.witness.cmp(&b.witness));
        report.condition("no-2-cycles-oo-ii", two, None);

        let mut adj = vec![vec![false; nv]; nv];
        for &(a, b) in &link.edges {
            if a != b {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }

        let mut three = Vec::new();
        for a in 0..nv {
            for b in (a + 1)..nv {
                if !adj[a][b] {
                    continue;
                }
                for c in (b + 1)..nv {
                    if adj[a][c] && adj[b][c] {
                        let outs =
                            [a, b, c].iter().filter(|&&v| is_out(v)).count();
                        if outs == 2 || outs == 1 {
                            let ty = if outs == 2 { "(o,o,i)" } else { "(i,i,o)" };
                            three.push(violation(
                                "three-cycle",
                                &[&names[a], &names[b], &names[c]],
                                &format!("embedded 3-cycle of type {ty}"),
                            ));
                        }
                    }
                }
            }
        }
        report.condition("no-3-cycles-ooi-iio", three, None);

        let mut four = Vec::new();
        // alternating 4-cycles out-in-out-in: pick o1 < o2 out-germs and
        // distinct in-germs i1, i2 adjacent to both
        for o1 in (0..nv).step_by(2) {
            for o2 in ((o1 + 2)..nv).step_by(2) {
                let commons: Vec<usize> = (1..nv)
                    .step_by(2)
                    .filter(|&i| adj[o1][i] && adj[o2][i])
                    .collect();
                for x in 0..commons.len() {
                    for y in (x + 1)..commons.len() {
                        four.push(violation(
                            "four-cycle",
                            &[
                                &names[o1],
                                &names[commons[x]],
                                &names[o2],
                                &names[commons[y]],
                            ],
                            "embedded 4-cycle of type (o,i,o,i)",
                        ));
                    }
                }
            }
        }
        report.condition("no-4-cycles-oioi", four, None);

        Ok(report)
    }

    /// The table `{e} u S u {sides}` with products by concatenation.
    pub fn build_u_square(&self) -> Result<PartialMulTable> {
        self.square_indexed()?;
        self.build_u_t5()
    }

    /// Shape clause of restricted systolic presentations: every relation is
    /// `ab = c` with single letters. The global systolicity clause is out of
    /// scope and reported as unverified.
    pub fn check_systolic_shape(&self) -> Result<CheckReport> {
        let ix = self.index()?;
        let mut report = CheckReport::new();
        let mut shape = Vec::new();
        for (k, (r, rp)) in ix.relations.iter().enumerate() {
            let ok = (r.len() == 2 && rp.len() == 1) || (r.len() == 1 && rp.len() == 2);
            if !ok {
                shape.push(violation(
                    "systolic-shape",
                    &[&format!("relation {k}")],
                    "relator is not of the form ab = c",
                ));
            }
        }
        report.condition("systolic-shape", shape, None);
        report.note(
            "global-systolicity",
            "not verified — out of scope".to_string(),
        );
        Ok(report)
    }
}

/// The positive surface presentations: for orientable genus `g >= 2`,
/// generators `a_i, b_i` plus chain generators `h_2..h_{g-1}` with the long
/// swap relation and one braid-style relation per `h_i`; for non-orientable
/// genus `g >= 2`, the relation `a_1^2 ... a_{g-1}^2 = a_g^2` (the Klein
/// bottle `a^2 = b^2` at `g = 2`).
pub fn surface_presentation(genus: u32, orientable: bool) -> Result<PositivePresentation> {
    if genus < 2 {
        return Err(CoreError::InvalidInput(
            "surface presentations require genus >= 2".into(),
        ));
    }
    let g = genus as usize;
    if orientable {
        let mut gens = Vec::new();
        for i in 1..=g {
            gens.push(format!("a{i}"));
            gens.push(format!("b{i}"));
        }
        for i in 2..g {
            gens.push(format!("h{i}"));
        }
        let mut lhs = vec!["a1".to_string(), "b1".to_string()];
        for i in 2..g {
            lhs.push(format!("h{i}"));
        }
        lhs.push(format!("a{g}"));
        lhs.push(format!("b{g}"));
        let mut rhs = vec![format!("a{g}"), format!("b{g}")];
        for i in 2..g {
            rhs.push(format!("h{i}"));
        }
        rhs.push("a1".to_string());
        rhs.push("b1".to_string());
        let mut relations = vec![(lhs, rhs)];
        for i in 2..g {
            relations.push((
                vec![format!("a{i}"), format!("b{i}")],
                vec![format!("h{i}"), format!("b{i}"), format!("a{i}")],
            ));
        }
        PositivePresentation::new(gens, relations)
    } else {
        let gens: Vec<String> = (1..=g).map(|i| format!("a{i}")).collect();
        let mut lhs = Vec::new();
        for i in 1..g {
            lhs.push(format!("a{i}"));
            lhs.push(format!("a{i}"));
        }
        let rhs = vec![format!("a{g}"), format!("a{g}")];
        PositivePresentation::new(gens, vec![(lhs, rhs)])
    }
}

/// The hub form of `G_{n,m}`: generators `x_1..x_n` and a hub `z`, with the
/// cyclic window relations `x_i x_{i+1} ... x_{i+m-1} = z`. For `m = 2` every
/// relator has the restricted systolic shape `ab = c`.
pub fn gnm_presentation(n: u32, m: u32) -> Result<PositivePresentation> {
    if n == 0 || m == 0 || m as usize > n as usize {
        return Err(CoreError::InvalidInput("gnm requires 1 <= m <= n".into()));
    }
    let n = n as usize;
    let m = m as usize;
    let mut gens: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    gens.push("z".to_string());
    let mut relations = Vec::new();
    for i in 0..n {
        let lhs: Vec<String> = (0..m).map(|k| format!("x{}", (i + k) % n + 1)).collect();
        relations.push((lhs, vec!["z".to_string()]));
    }
    PositivePresentation::new(gens, relations)
}
