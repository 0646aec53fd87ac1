//! Exact Coxeter-group kernel: geometric representation over the real
//! cyclotomic field, element arithmetic and equality in possibly infinite
//! groups, spherical classification, parabolic enumeration, descents and
//! supports, reflections, reflection length by fixed-space codimension with a
//! Cayley-graph oracle, dual intervals, and orientation-compatible Coxeter
//! elements.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::cache::DiskCache;
use crate::field::{cos_pi_over, context_order_for_labels, make_context, CycReal, Ctx, Rat};
use crate::poset::{FinitePoset, LabeledPoset};
use crate::{CoreError, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 1_200_000;

// ---------------------------------------------------------------------------
// graphs
// ---------------------------------------------------------------------------

/// A Coxeter presentation graph: labeled edges (m >= 2), absent pair = no
/// relation (infinite label), plus an optional orientation of large edges
/// (label >= 3, i.e. the Dynkin-diagram edges).
#[derive(Debug, Clone)]
pub struct CoxeterGraph {
    vertices: Vec<String>,
    labels: HashMap<(usize, usize), u64>,
    orientation: HashMap<(usize, usize), (usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<EdgeFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeFile {
    u: String,
    v: String,
    m: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    orient: Option<String>,
}

impl CoxeterGraph {
    pub fn new(vertices: Vec<String>) -> Self {
        CoxeterGraph { vertices, labels: HashMap::new(), orientation: HashMap::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, m: u64) -> Result<()> {
        if u == v || m < 2 {
            return Err(CoreError::InvalidInput("edge needs u != v and m >= 2".into()));
        }
        let key = (u.min(v), u.max(v));
        if self.labels.insert(key, m).is_some() {
            return Err(CoreError::InvalidInput("duplicate edge".into()));
        }
        Ok(())
    }

    pub fn orient_edge(&mut self, from: usize, to: usize) -> Result<()> {
        let key = (from.min(to), from.max(to));
        match self.labels.get(&key) {
            Some(&m) if m >= 3 => {
                self.orientation.insert(key, (from, to));
                Ok(())
            }
            Some(_) => Err(CoreError::InvalidInput(
                "only large edges (label >= 3) carry an orientation".into(),
            )),
            None => Err(CoreError::InvalidInput("cannot orient a missing edge".into())),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: GraphFile = serde_json::from_str(text)?;
        let mut g = CoxeterGraph::new(f.vertices);
        let idx = |g: &CoxeterGraph, name: &str| -> Result<usize> {
            g.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| CoreError::InvalidInput(format!("unknown vertex {name}")))
        };
        for e in &f.edges {
            let u = idx(&g, &e.u)?;
            let v = idx(&g, &e.v)?;
            g.add_edge(u, v, e.m)?;
            match e.orient.as_deref() {
                None => {}
                Some("uv") => g.orient_edge(u, v)?,
                Some("vu") => g.orient_edge(v, u)?,
                Some(other) => {
                    return Err(CoreError::InvalidInput(format!(
                        "orient must be \"uv\" or \"vu\", got {other}"
                    )))
                }
            }
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let mut keys: Vec<_> = self.labels.keys().copied().collect();
        keys.sort();
        let edges = keys
            .iter()
            .map(|&(a, b)| EdgeFile {
                u: self.vertices[a].clone(),
                v: self.vertices[b].clone(),
                m: self.labels[&(a, b)],
                orient: self.orientation.get(&(a, b)).map(|&(f, _)| {
                    if f == a { "uv".to_string() } else { "vu".to_string() }
                }),
            })
            .collect();
        let f = GraphFile { vertices: self.vertices.clone(), edges };
        serde_json::to_string_pretty(&f).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// The label of a pair: `Some(m)` for an edge, `None` for no relation
    /// (infinite label in the Dynkin diagram).
    pub fn label(&self, u: usize, v: usize) -> Option<u64> {
        if u == v {
            return Some(1);
        }
        self.labels.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn commutes(&self, u: usize, v: usize) -> bool {
        self.label(u, v) == Some(2)
    }

    /// Dynkin adjacency: label >= 3 or absent (infinite).
    pub fn dynkin_adjacent(&self, u: usize, v: usize) -> bool {
        u != v && !self.commutes(u, v)
    }

    pub fn is_large_edge(&self, u: usize, v: usize) -> bool {
        matches!(self.label(u, v), Some(m) if m >= 3 && u != v)
    }

    pub fn oriented(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        self.orientation.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn large_edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out: Vec<_> = self
            .labels
            .iter()
            .filter(|(_, &m)| m >= 3)
            .map(|(&(a, b), &m)| (a, b, m))
            .collect();
        out.sort();
        out
    }

    pub fn finite_labels(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.labels.values().copied().collect();
        v.sort();
        v
    }

    /// Connected components of the induced Dynkin diagram on `subset`.
    pub fn irreducible_components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut seen: HashSet<usize> = HashSet::new();
        for &start in subset {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in subset {
                    if !seen.contains(&y) && self.dynkin_adjacent(x, y) {
                        seen.insert(y);
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps.sort();
        comps
    }

    /// Whether the parabolic on `subset` is finite, by matching each Dynkin
    /// component against the classification of finite types.
    pub fn is_spherical(&self, subset: &[usize]) -> bool {
        self.irreducible_components(subset)
            .iter()
            .all(|c| self.component_is_finite(c))
    }

    fn component_is_finite(&self, comp: &[usize]) -> bool {
        let n = comp.len();
        if n == 1 {
            return true;
        }
        // collect Dynkin edges; any infinite label kills finiteness
        let mut edges: Vec<(usize, usize, u64)> = Vec::new();
        for (i, &a) in comp.iter().enumerate() {
            for &b in &comp[i + 1..] {
                if self.dynkin_adjacent(a, b) {
                    match self.label(a, b) {
                        Some(m) => edges.push((a, b, m)),
                        None => return false,
                    }
                }
            }
        }
        if edges.len() != n - 1 {
            return false; // not a tree
        }
        let mut deg: HashMap<usize, usize> = HashMap::new();
        for &(a, b, _) in &edges {
            *deg.entry(a).or_insert(0) += 1;
            *deg.entry(b).or_insert(0) += 1;
        }
        if deg.values().any(|&d| d >= 4) {
            return false;
        }
        let branch: Vec<usize> = comp.iter().copied().filter(|v| deg[v] == 3).collect();
        match branch.len() {
            0 => self.path_is_finite(comp, &edges),
            1 => {
                if edges.iter().any(|&(_, _, m)| m != 3) {
                    return false;
                }
                let b = branch[0];
                let mut lens: Vec<usize> = Vec::new();
                let adj: Vec<usize> = comp
                    .iter()
                    .copied()
                    .filter(|&v| v != b && self.dynkin_adjacent(b, v))
                    .collect();
                for start in adj {
                    let mut len = 1;
                    let mut prev = b;
                    let mut cur = start;
                    loop {
                        let next = comp.iter().copied().find(|&v| {
                            v != prev && v != cur && self.dynkin_adjacent(cur, v)
                        });
                        match next {
                            Some(v) => {
                                prev = cur;
                                cur = v;
                                len += 1;
                            }
                            None => break,
                        }
                    }
                    lens.push(len);
                }
                lens.sort();
                matches!(lens.as_slice(), [1, 1, _] | [1, 2, 2] | [1, 2, 3] | [1, 2, 4])
            }
            _ => false,
        }
    }

    fn path_is_finite(&self, comp: &[usize], edges: &[(usize, usize, u64)]) -> bool {
        let n = comp.len();
        if n == 2 {
            return true; // I_2(m) for any finite m
        }
        let mut deg: HashMap<usize, usize> = HashMap::new();
        for &(a, b, _) in edges {
            *deg.entry(a).or_insert(0) += 1;
            *deg.entry(b).or_insert(0) += 1;
        }
        let start = *comp.iter().find(|v| deg[v] == 1).unwrap();
        let mut order = vec![start];
        let mut prev = usize::MAX;
        while order.len() < n {
            let cur = *order.last().unwrap();
            let next = comp
                .iter()
                .copied()
                .find(|&v| v != prev && v != cur && self.dynkin_adjacent(cur, v))
                .unwrap();
            prev = cur;
            order.push(next);
        }
        let labels: Vec<u64> = order
            .windows(2)
            .map(|w| self.label(w[0], w[1]).unwrap())
            .collect();
        let large: Vec<(usize, u64)> = labels
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, m)| m >= 4)
            .collect();
        match large.as_slice() {
            [] => true,                                   // A_n
            [(p, 4)] => *p == 0 || *p == n - 2 || n == 4, // B_n at an end, F_4 inside
            [(p, 5)] => (*p == 0 || *p == n - 2) && (n == 3 || n == 4), // H_3, H_4
            _ => false,
        }
    }

    /// All spherical subsets (sorted vertex lists, including the empty set).
    /// Spherical subsets are cliques of the presentation graph, which bounds
    /// the search.
    pub fn spherical_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        let mut frontier: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in frontier {
                if self.is_spherical(&c) {
                    out.push(c.clone());
                }
                let last = *c.last().unwrap();
                for v in (last + 1)..n {
                    if c.iter().all(|&u| self.label(u, v).is_some()) {
                        let mut c2 = c.clone();
                        c2.push(v);
                        next.push(c2);
                    }
                }
            }
            frontier = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// Maximal nonempty spherical subsets under inclusion.
    pub fn maximal_spherical_subsets(&self) -> Vec<Vec<usize>> {
        let all = self.spherical_subsets();
        let mut maximal = Vec::new();
        for s in &all {
            if s.is_empty() {
                continue;
            }
            let is_max =
                !all.iter().any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v)));
            if is_max {
                maximal.push(s.clone());
            }
        }
        maximal
    }

    /// Product order of `subset` compatible with the orientation of its large
    /// edges (topological order of the orientation DAG, smallest index first).
    pub fn compatible_order(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let mut indeg: HashMap<usize, usize> = subset.iter().map(|&v| (v, 0)).collect();
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for (i, &a) in subset.iter().enumerate() {
            for &b in &subset[i + 1..] {
                if self.is_large_edge(a, b) {
                    let (f, t) = self.oriented(a, b).ok_or_else(|| {
                        CoreError::InvalidInput(format!(
                            "large edge {}-{} carries no orientation",
                            self.vertices[a], self.vertices[b]
                        ))
                    })?;
                    arcs.push((f, t));
                    *indeg.get_mut(&t).unwrap() += 1;
                }
            }
        }
        let mut order = Vec::with_capacity(subset.len());
        let mut ready: Vec<usize> =
            subset.iter().copied().filter(|v| indeg[v] == 0).collect();
        ready.sort();
        while let Some(&v) = ready.first() {
            ready.remove(0);
            order.push(v);
            for &(f, t) in &arcs {
                if f == v {
                    let d = indeg.get_mut(&t).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.push(t);
                        ready.sort();
                    }
                }
            }
        }
        if order.len() != subset.len() {
            return Err(CoreError::CyclicOrientation);
        }
        Ok(order)
    }

    /// All linear orders of `subset` compatible with the orientation; used to
    /// certify uniqueness of the compatible Coxeter element.
    pub fn all_compatible_orders(&self, subset: &[usize]) -> Result<Vec<Vec<usize>>> {
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for (i, &a) in subset.iter().enumerate() {
            for &b in &subset[i + 1..] {
                if self.is_large_edge(a, b) {
                    let (f, t) = self.oriented(a, b).ok_or_else(|| {
                        CoreError::InvalidInput("large edge carries no orientation".into())
                    })?;
                    arcs.push((f, t));
                }
            }
        }
        fn rec(
            arcs: &[(usize, usize)],
            cur: &mut Vec<usize>,
            rest: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if rest.is_empty() {
                out.push(cur.clone());
                return;
            }
            for i in 0..rest.len() {
                let v = rest[i];
                if arcs.iter().any(|&(f, t)| t == v && f != v && rest.contains(&f)) {
                    continue;
                }
                rest.remove(i);
                cur.push(v);
                rec(arcs, cur, rest, out);
                cur.pop();
                rest.insert(i, v);
            }
        }
        let mut out = Vec::new();
        rec(&arcs, &mut Vec::new(), &mut subset.to_vec(), &mut out);
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// matrices
// ---------------------------------------------------------------------------

/// A Coxeter-group element as the exact matrix of the geometric
/// representation on the simple-root basis. Faithfulness makes matrix
/// equality group equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxMatrix {
    n: usize,
    a: Vec<CycReal>,
}

impl fmt::Debug for CoxMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxMatrix({}x{})", self.n, self.n)
    }
}

impl CoxMatrix {
    pub fn identity(ctx: &Ctx, n: usize) -> Self {
        let mut a = vec![CycReal::zero(ctx); n * n];
        for i in 0..n {
            a[i * n + i] = CycReal::one(ctx);
        }
        CoxMatrix { n, a }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &CycReal {
        &self.a[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let ctx = self.a[0].context().clone();
        let mut out = vec![CycReal::zero(&ctx); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = &self.a[i * n + k];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.a[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    out[i * n + j] = out[i * n + j].add(&aik.mul(b));
                }
            }
        }
        CoxMatrix { n, a: out }
    }
}

// ---------------------------------------------------------------------------
// realization
// ---------------------------------------------------------------------------

/// The geometric representation of a graph's Coxeter group, with exact
/// generator matrices and the bilinear form. Owns the in-process enumeration
/// cache and the optional disk cache.
pub struct Realization {
    graph: CoxeterGraph,
    ctx: Ctx,
    gens: Vec<CoxMatrix>,
    /// `bilinear[i * n + j] = B(alpha_i, alpha_j)`.
    bilinear: Vec<CycReal>,
    memo: Mutex<HashMap<Vec<usize>, std::sync::Arc<Enumerated>>>,
    cap: usize,
    cache: DiskCache,
}

/// An enumerated finite parabolic: elements in BFS order with reduced words,
/// generator action tables, and reflection lengths by fixed-space rank.
#[derive(Debug)]
pub struct Enumerated {
    pub subset: Vec<usize>,
    pub elements: Vec<CoxMatrix>,
    pub words: Vec<Vec<usize>>,
    pub index: HashMap<CoxMatrix, usize>,
    /// `gen_action[k][w]` is the index of `w * s` where `s = subset[k]`.
    pub gen_action: Vec<Vec<u32>>,
    pub rlen: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct EnumCacheValue {
    words: Vec<Vec<usize>>,
    gen_action: Vec<Vec<u32>>,
    rlen: Vec<usize>,
}

impl Enumerated {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Applies a word (ambient generator indices within the subset) starting
    /// at element `start`, using only the index tables.
    pub fn apply_word(&self, start: usize, word: &[usize]) -> usize {
        let mut cur = start;
        for &g in word {
            let k = self
                .subset
                .iter()
                .position(|&s| s == g)
                .expect("letter outside the parabolic subset");
            cur = self.gen_action[k][cur] as usize;
        }
        cur
    }

    pub fn inverse(&self, w: usize) -> usize {
        let rev: Vec<usize> = self.words[w].iter().rev().copied().collect();
        self.apply_word(0, &rev)
    }

    /// Index of `a * b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let w = self.words[b].clone();
        self.apply_word(a, &w)
    }

    /// Index of `a^{-1} * b`.
    pub fn left_quotient(&self, a: usize, b: usize) -> usize {
        let w = self.words[b].clone();
        self.apply_word(self.inverse(a), &w)
    }
}

impl Realization {
    pub fn new(graph: CoxeterGraph) -> Result<Self> {
        Self::with_options(graph, DEFAULT_ENUMERATION_CAP, DiskCache::disabled())
    }

    pub fn with_options(graph: CoxeterGraph, cap: usize, cache: DiskCache) -> Result<Self> {
        let n = graph.rank();
        let ctx = make_context(context_order_for_labels(graph.finite_labels()))?;
        let mut bilinear = vec![CycReal::zero(&ctx); n * n];
        for i in 0..n {
            for j in 0..n {
                bilinear[i * n + j] = if i == j {
                    CycReal::one(&ctx)
                } else {
                    match graph.label(i, j) {
                        Some(m) => cos_pi_over(&ctx, m)?.neg(),
                        None => CycReal::from_int(&ctx, -1), // standard convention at infinite labels
                    }
                };
            }
        }
        let mut gens = Vec::with_capacity(n);
        for i in 0..n {
            let mut m = CoxMatrix::identity(&ctx, n);
            for j in 0..n {
                m.a[i * n + j] = if i == j {
                    CycReal::from_int(&ctx, -1)
                } else {
                    bilinear[j * n + i].mul_rat(&Rat::new((-2).into(), 1.into()))
                };
            }
            gens.push(m);
        }
        let r = Realization {
            graph,
            ctx,
            gens,
            bilinear,
            memo: Mutex::new(HashMap::new()),
            cap,
            cache,
        };
        r.verify_defining_relations()?;
        Ok(r)
    }

    /// Exact verification: each generator is an involution and each finite
    /// edge label is the exact order of the product of its two reflections.
    fn verify_defining_relations(&self) -> Result<()> {
        let n = self.graph.rank();
        let id = CoxMatrix::identity(&self.ctx, n);
        for (i, g) in self.gens.iter().enumerate() {
            if g.mul(g) != id {
                return Err(CoreError::Internal(format!(
                    "generator {} is not an involution",
                    self.graph.vertices[i]
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if let Some(m) = self.graph.label(i, j) {
                    let p = self.gens[i].mul(&self.gens[j]);
                    let mut acc = CoxMatrix::identity(&self.ctx, n);
                    let mut order = 0;
                    for k in 1..=m {
                        acc = acc.mul(&p);
                        if acc == id {
                            order = k;
                            break;
                        }
                    }
                    if order != m {
                        return Err(CoreError::Internal(format!(
                            "braid relation failed on edge {}-{}: order {} expected {}",
                            self.graph.vertices[i], self.graph.vertices[j], order, m
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn generator(&self, i: usize) -> &CoxMatrix {
        &self.gens[i]
    }

    pub fn identity_matrix(&self) -> CoxMatrix {
        CoxMatrix::identity(&self.ctx, self.graph.rank())
    }

    /// `w * s_g` as a rank-one column update.
    pub fn mul_gen_right(&self, w: &CoxMatrix, g: usize) -> CoxMatrix {
        let n = w.n;
        let mut out = w.clone();
        let col_g: Vec<CycReal> = (0..n).map(|k| w.a[k * n + g].clone()).collect();
        for j in 0..n {
            if j == g {
                for (k, cg) in col_g.iter().enumerate() {
                    out.a[k * n + j] = cg.neg();
                }
            } else {
                let b = &self.bilinear[j * n + g];
                if !b.is_zero() {
                    let factor = b.mul_rat(&Rat::new(2.into(), 1.into()));
                    for (k, cg) in col_g.iter().enumerate() {
                        if !cg.is_zero() {
                            out.a[k * n + j] = out.a[k * n + j].sub(&factor.mul(cg));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn eval_word(&self, word: &[usize]) -> CoxMatrix {
        let mut m = self.identity_matrix();
        for &g in word {
            m = self.mul_gen_right(&m, g);
        }
        m
    }

    /// Rank of `(M - I)` restricted to the rows and columns of `subset`;
    /// Carter's fixed-space codimension, the reflection length in the finite
    /// parabolic on `subset`.
    pub fn carter_length(&self, m: &CoxMatrix, subset: &[usize]) -> usize {
        let k = subset.len();
        let mut rows: Vec<Vec<CycReal>> = Vec::with_capacity(k);
        for &i in subset {
            let mut row = Vec::with_capacity(k);
            for &j in subset {
                let mut v = m.at(i, j).clone();
                if i == j {
                    v = v.sub(&CycReal::one(&self.ctx));
                }
                row.push(v);
            }
            rows.push(row);
        }
        let mut rank = 0;
        let mut col = 0;
        while rank < k && col < k {
            match (rank..k).find(|&r| !rows[r][col].is_zero()) {
                None => col += 1,
                Some(p) => {
                    rows.swap(rank, p);
                    let inv = rows[rank][col].inverse().unwrap();
                    for r in (rank + 1)..k {
                        if !rows[r][col].is_zero() {
                            let f = rows[r][col].mul(&inv);
                            for c in col..k {
                                let t = f.mul(&rows[rank][c]);
                                rows[r][c] = rows[r][c].sub(&t);
                            }
                        }
                    }
                    rank += 1;
                    col += 1;
                }
            }
        }
        rank
    }

    /// BFS enumeration of the parabolic on `subset` by right multiplication,
    /// deduplicating by exact matrices. Errors out beyond the cap.
    pub fn enumerate_parabolic(&self, subset: &[usize]) -> Result<std::sync::Arc<Enumerated>> {
        {
            let memo = self.memo.lock().unwrap();
            if let Some(en) = memo.get(subset) {
                return Ok(en.clone());
            }
        }
        let en = std::sync::Arc::new(self.enumerate_uncached(subset)?);
        self.memo.lock().unwrap().insert(subset.to_vec(), en.clone());
        Ok(en)
    }

    fn cache_key(&self, subset: &[usize]) -> String {
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        for (i, &a) in subset.iter().enumerate() {
            for (dj, &b) in subset.iter().enumerate().skip(i + 1) {
                let m = self.graph.label(a, b).map(|m| m as i64).unwrap_or(-1);
                edges.push((i, dj, m));
            }
        }
        edges.sort();
        format!("parabolic|n={}|{:?}", subset.len(), edges)
    }

    fn enumerate_uncached(&self, subset: &[usize]) -> Result<Enumerated> {
        let key = self.cache_key(subset);
        if let Some(v) = self.cache.load::<EnumCacheValue>(&key) {
            if let Ok(en) = self.rebuild_from_cache(subset, v) {
                return Ok(en);
            }
        }
        let mut elements = vec![self.identity_matrix()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index: HashMap<CoxMatrix, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut gen_action: Vec<Vec<u32>> = vec![Vec::new(); subset.len()];
        let mut processed = 0usize;
        while processed < elements.len() {
            let w = processed;
            processed += 1;
            for (k, &g) in subset.iter().enumerate() {
                let m = self.mul_gen_right(&elements[w], g);
                let idx = match index.get(&m) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= self.cap {
                            return Err(CoreError::EnumerationCap(self.cap));
                        }
                        let mut word = words[w].clone();
                        word.push(g);
                        elements.push(m.clone());
                        words.push(word);
                        index.insert(m, i);
                        i
                    }
                };
                if gen_action[k].len() <= w {
                    gen_action[k].resize(w + 1, u32::MAX);
                }
                gen_action[k][w] = idx as u32;
            }
        }
        let total = elements.len();
        for ga in gen_action.iter_mut() {
            ga.resize(total, u32::MAX);
        }
        // fill remaining actions (elements discovered late still need rows)
        for w in 0..total {
            for (k, &g) in subset.iter().enumerate() {
                if gen_action[k][w] == u32::MAX {
                    let m = self.mul_gen_right(&elements[w], g);
                    gen_action[k][w] = index[&m] as u32;
                }
            }
        }
        let rlen: Vec<usize> =
            elements.iter().map(|m| self.carter_length(m, subset)).collect();
        let en = Enumerated {
            subset: subset.to_vec(),
            elements,
            words,
            index,
            gen_action,
            rlen,
        };
        // cached words use subset-relative letters, so isomorphic subsets
        // (which share a key) stay interchangeable
        let rel_words: Vec<Vec<usize>> = en
            .words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|g| subset.iter().position(|s| s == g).unwrap())
                    .collect()
            })
            .collect();
        let _ = self.cache.store(
            &key,
            &EnumCacheValue {
                words: rel_words,
                gen_action: en.gen_action.clone(),
                rlen: en.rlen.clone(),
            },
        );
        Ok(en)
    }

    fn rebuild_from_cache(&self, subset: &[usize], v: EnumCacheValue) -> Result<Enumerated> {
        // cached words are subset-relative; translate back to ambient letters
        let words: Vec<Vec<usize>> = v
            .words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&k| {
                        subset
                            .get(k)
                            .copied()
                            .ok_or_else(|| CoreError::Internal("corrupt cache: letter".into()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        let mut by_word: HashMap<&[usize], usize> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            by_word.insert(w.as_slice(), i);
        }
        let mut elements: Vec<CoxMatrix> = Vec::with_capacity(words.len());
        for w in &words {
            if w.is_empty() {
                elements.push(self.identity_matrix());
            } else {
                let parent = &w[..w.len() - 1];
                let pi = *by_word
                    .get(parent)
                    .ok_or_else(|| CoreError::Internal("corrupt cache: missing prefix".into()))?;
                if pi >= elements.len() {
                    return Err(CoreError::Internal("corrupt cache: order".into()));
                }
                elements.push(self.mul_gen_right(&elements[pi], w[w.len() - 1]));
            }
        }
        let index: HashMap<CoxMatrix, usize> =
            elements.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        if index.len() != elements.len() {
            return Err(CoreError::Internal("corrupt cache: duplicate elements".into()));
        }
        Ok(Enumerated {
            subset: subset.to_vec(),
            elements,
            words,
            index,
            gen_action: v.gen_action,
            rlen: v.rlen,
        })
    }

    /// Left descents: `s` with `w^{-1} alpha_s` a negative root.
    pub fn left_descents(&self, m: &CoxMatrix) -> Vec<usize> {
        let inv = self.invert(m);
        self.right_descents(&inv)
    }

    /// Right descents: `s` with `w alpha_s` a negative root.
    pub fn right_descents(&self, m: &CoxMatrix) -> Vec<usize> {
        let n = m.n;
        (0..n)
            .filter(|&s| {
                let nonzero = (0..n).any(|k| !m.a[k * n + s].is_zero());
                nonzero && (0..n).all(|k| !m.a[k * n + s].is_positive())
            })
            .collect()
    }

    pub fn invert(&self, m: &CoxMatrix) -> CoxMatrix {
        let word = self.reduced_word(m);
        let rev: Vec<usize> = word.iter().rev().copied().collect();
        self.eval_word(&rev)
    }

    /// A reduced word by greedy descent stripping; length strictly decreases
    /// at each step, so this terminates in any Coxeter group.
    pub fn reduced_word(&self, m: &CoxMatrix) -> Vec<usize> {
        let id = self.identity_matrix();
        let mut cur = m.clone();
        let mut rev = Vec::new();
        while cur != id {
            let t = self
                .right_descents(&cur)
                .into_iter()
                .next()
                .expect("non-identity element without right descents");
            rev.push(t);
            cur = self.mul_gen_right(&cur, t);
        }
        rev.reverse();
        rev
    }

    /// The support: letters of any reduced word (well-defined).
    pub fn support(&self, m: &CoxMatrix) -> Vec<usize> {
        let mut s: Vec<usize> = self.reduced_word(m);
        s.sort();
        s.dedup();
        s
    }

    /// All reflections of the parabolic: conjugates of its generators,
    /// deduplicated via the enumeration's index; returned as element indices,
    /// sorted.
    pub fn reflections(&self, en: &Enumerated) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut seen: HashSet<usize> = HashSet::new();
        for w in 0..en.len() {
            for &s in &en.subset {
                let mut word: Vec<usize> = en.words[w].clone();
                word.push(s);
                word.extend(en.words[w].iter().rev());
                let idx = en.apply_word(0, &word);
                if seen.insert(idx) {
                    out.push(idx);
                }
            }
        }
        out.sort();
        out
    }

    /// Cayley-graph distance over the reflections; the oracle against which
    /// Carter lengths are certified.
    pub fn reflection_distance_all(&self, en: &Enumerated) -> Vec<usize> {
        let refl = self.reflections(en);
        let refl_words: Vec<Vec<usize>> =
            refl.iter().map(|&r| en.words[r].clone()).collect();
        let mut dist = vec![usize::MAX; en.len()];
        dist[0] = 0;
        let mut q = VecDeque::new();
        q.push_back(0usize);
        while let Some(w) = q.pop_front() {
            for rw in &refl_words {
                let x = en.apply_word(w, rw);
                if dist[x] == usize::MAX {
                    dist[x] = dist[w] + 1;
                    q.push_back(x);
                }
            }
        }
        dist
    }

    /// The compatible Coxeter element of `subset` as a word.
    pub fn compatible_coxeter_word(&self, subset: &[usize]) -> Result<Vec<usize>> {
        self.graph.compatible_order(subset)
    }

    /// The dual interval `[1, delta]`: indices of elements on reflection-length
    /// geodesics from the identity to `delta`.
    pub fn dual_interval(&self, en: &Enumerated, delta: usize) -> Vec<usize> {
        let dl = en.rlen[delta];
        (0..en.len())
            .filter(|&u| {
                let q = en.left_quotient(u, delta);
                en.rlen[u] + en.rlen[q] == dl
            })
            .collect()
    }

    pub fn word_name(&self, word: &[usize]) -> String {
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter()
                .map(|&g| self.graph.vertices[g].clone())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// The dual interval as a labeled poset: `u <= v` iff lengths add, label
    /// of `(u, v)` is `u^{-1} v`.
    pub fn dual_interval_poset(
        &self,
        en: &Enumerated,
        members: &[usize],
    ) -> Result<LabeledPoset> {
        let pos: HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let ids: Vec<String> = members.iter().map(|&w| self.word_name(&en.words[w])).collect();
        let leq: Vec<Vec<bool>> = members
            .iter()
            .map(|&u| {
                members
                    .iter()
                    .map(|&v| {
                        let q = en.left_quotient(u, v);
                        en.rlen[u] + en.rlen[q] == en.rlen[v]
                    })
                    .collect()
            })
            .collect();
        let poset = FinitePoset::new(ids.clone(), |i, j| leq[i][j])?;
        let mut labels = HashMap::new();
        for (i, &u) in members.iter().enumerate() {
            for j in poset.up_set(i).iter() {
                let q = en.left_quotient(u, members[j]);
                let l = *pos.get(&q).ok_or_else(|| {
                    CoreError::Internal("interval label escaped the interval".into())
                })?;
                labels.insert((i, j), l);
            }
        }
        LabeledPoset::new(poset, labels, ids)
    }
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
pub(crate) fn path_graph(labels: &[u64]) -> CoxeterGraph {
    let n = labels.len() + 1;
    let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let mut g = CoxeterGraph::new(names);
    for (i, &m) in labels.iter().enumerate() {
        g.add_edge(i, i + 1, m).unwrap();
        if m >= 3 {
            g.orient_edge(i, i + 1).unwrap();
        }
    }
    for i in 0..n {
        for j in (i + 2)..n {
            g.add_edge(i, j, 2).unwrap();
        }
    }
    g
}

#[cfg(test)]
pub(crate) fn cycle_graph(labels: &[u64]) -> CoxeterGraph {
    let n = labels.len();
    let names: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let mut g = CoxeterGraph::new(names);
    for (i, &m) in labels.iter().enumerate() {
        let j = (i + 1) % n;
        g.add_edge(i, j, m).unwrap();
        g.orient_edge(i, j).unwrap();
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if g.label(i, j).is_none() {
                g.add_edge(i, j, 2).unwrap();
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank1_and_a2_relations() {
        let g = path_graph(&[3]);
        let r = Realization::new(g).unwrap();
        let id = r.identity_matrix();
        let p = r.generator(0).mul(r.generator(1));
        assert_eq!(p.mul(&p).mul(&p), id);
        // rank 1: the matrix (-1)
        let g1 = CoxeterGraph::new(vec!["s".into()]);
        let r1 = Realization::new(g1).unwrap();
        assert_eq!(
            *r1.generator(0).at(0, 0),
            CycReal::from_int(r1.context(), -1)
        );
    }

    #[test]
    fn i5_braid_relation_exact() {
        let g = path_graph(&[5]);
        let r = Realization::new(g).unwrap();
        let p = r.generator(0).mul(r.generator(1));
        let mut acc = r.identity_matrix();
        for _ in 0..5 {
            acc = acc.mul(&p);
        }
        assert_eq!(acc, r.identity_matrix());
    }

    #[test]
    fn spherical_classifier() {
        let b3 = path_graph(&[3, 4]);
        assert!(b3.is_spherical(&[0, 1, 2]));
        let c2_affine = path_graph(&[4, 4]);
        assert!(!c2_affine.is_spherical(&[0, 1, 2]));
        let h3 = path_graph(&[5, 3]);
        assert!(h3.is_spherical(&[0, 1, 2]));
        let h4 = path_graph(&[5, 3, 3]);
        assert!(h4.is_spherical(&[0, 1, 2, 3]));
        let f4 = path_graph(&[3, 4, 3]);
        assert!(f4.is_spherical(&[0, 1, 2, 3]));
        let a1 = path_graph(&[3]);
        assert!(a1.is_spherical(&[0]));
        let tri = cycle_graph(&[3, 3, 3]);
        assert!(!tri.is_spherical(&[0, 1, 2]));
        assert!(tri.is_spherical(&[0, 1]));
        let d4 = {
            let mut g = CoxeterGraph::new(
                ["c", "l1", "l2", "l3"].iter().map(|s| s.to_string()).collect(),
            );
            g.add_edge(0, 1, 3).unwrap();
            g.add_edge(0, 2, 3).unwrap();
            g.add_edge(0, 3, 3).unwrap();
            g.add_edge(1, 2, 2).unwrap();
            g.add_edge(1, 3, 2).unwrap();
            g.add_edge(2, 3, 2).unwrap();
            g
        };
        assert!(d4.is_spherical(&[0, 1, 2, 3]));
    }

    #[test]
    fn affine_enumeration_hits_cap() {
        let g = path_graph(&[4, 4]);
        let r = Realization::with_options(g, 10_000, DiskCache::disabled()).unwrap();
        match r.enumerate_parabolic(&[0, 1, 2]) {
            Err(CoreError::EnumerationCap(_)) => {}
            other => panic!("expected cap error, got {:?}", other.map(|e| e.len())),
        }
    }

    #[test]
    fn parabolic_orders() {
        let a3 = path_graph(&[3, 3]);
        let r = Realization::new(a3).unwrap();
        let en = r.enumerate_parabolic(&[0, 1]).unwrap();
        assert_eq!(en.len(), 6);
        let en = r.enumerate_parabolic(&[0, 1, 2]).unwrap();
        assert_eq!(en.len(), 24);
        let b3 = path_graph(&[3, 4]);
        let r = Realization::new(b3).unwrap();
        let en = r.enumerate_parabolic(&[0, 1, 2]).unwrap();
        assert_eq!(en.len(), 48);
    }

    #[test]
    fn reflection_counts() {
        let a2 = path_graph(&[3]);
        let r = Realization::new(a2).unwrap();
        let en = r.enumerate_parabolic(&[0, 1]).unwrap();
        assert_eq!(r.reflections(&en).len(), 3);
        let b3 = path_graph(&[3, 4]);
        let r = Realization::new(b3).unwrap();
        let en = r.enumerate_parabolic(&[0, 1, 2]).unwrap();
        assert_eq!(r.reflections(&en).len(), 9);
    }

    #[test]
    fn f4_orders_and_reflections() {
        let f4 = path_graph(&[3, 4, 3]);
        let r = Realization::new(f4).unwrap();
        let en = r.enumerate_parabolic(&[0, 1, 2, 3]).unwrap();
        assert_eq!(en.len(), 1152);
        assert_eq!(r.reflections(&en).len(), 24);
    }

    #[test]
    fn carter_equals_bfs_on_b3() {
        let b3 = path_graph(&[3, 4]);
        let r = Realization::new(b3).unwrap();
        let en = r.enumerate_parabolic(&[0, 1, 2]).unwrap();
        let dist = r.reflection_distance_all(&en);
        assert_eq!(dist, en.rlen);
        assert_eq!(en.rlen[0], 0);
        let delta = en.apply_word(0, &[0, 1, 2]);
        assert_eq!(en.rlen[delta], 3);
        for t in r.reflections(&en) {
            assert_eq!(en.rlen[t], 1);
        }
    }

    #[test]
    fn descents_and_words() {
        let a2 = path_graph(&[3]);
        let r = Realization::new(a2).unwrap();
        let id = r.identity_matrix();
        assert!(r.reduced_word(&id).is_empty());
        assert!(r.support(&id).is_empty());
        let w = r.eval_word(&[0, 1, 0]);
        assert_eq!(r.reduced_word(&w).len(), 3);
        assert_eq!(r.left_descents(&w), vec![0, 1]);
        let w = r.eval_word(&[0, 1]);
        assert_eq!(r.left_descents(&w), vec![0]);
    }

    #[test]
    fn dual_interval_sizes() {
        for m in [3u64, 4, 5, 7] {
            let g = path_graph(&[m]);
            let r = Realization::new(g).unwrap();
            let en = r.enumerate_parabolic(&[0, 1]).unwrap();
            let delta = en.apply_word(0, &[0, 1]);
            let members = r.dual_interval(&en, delta);
            assert_eq!(members.len(), m as usize + 2);
        }
        let a3 = path_graph(&[3, 3]);
        let r = Realization::new(a3).unwrap();
        let en = r.enumerate_parabolic(&[0, 1, 2]).unwrap();
        let delta = en.apply_word(0, &[0, 1, 2]);
        let members = r.dual_interval(&en, delta);
        assert_eq!(members.len(), 14);
        let lp = r.dual_interval_poset(&en, &members).unwrap();
        assert!(lp.poset.find_bowtie().is_none(), "A_3 interval is a lattice");
        assert!(lp.is_group_like().passed());
        assert!(lp.is_balanced().passed());
    }

    #[test]
    fn noncrossing_partition_oracle_a3() {
        fn partitions(n: usize) -> Vec<Vec<usize>> {
            let mut out = vec![vec![0usize]];
            for _ in 1..n {
                let mut next = Vec::new();
                for p in &out {
                    let maxb = *p.iter().max().unwrap();
                    for b in 0..=maxb + 1 {
                        let mut q = p.clone();
                        q.push(b);
                        next.push(q);
                    }
                }
                out = next;
            }
            out
        }
        let crossing = |p: &[usize]| -> bool {
            let n = p.len();
            for a in 0..n {
                for b in (a + 1)..n {
                    for c in (b + 1)..n {
                        for d in (c + 1)..n {
                            if p[a] == p[c] && p[b] == p[d] && p[a] != p[b] {
                                return true;
                            }
                        }
                    }
                }
            }
            false
        };
        let count = partitions(4).iter().filter(|p| !crossing(p)).count();
        assert_eq!(count, 14);
    }

    #[test]
    fn compatible_coxeter_element_unique() {
        let b3 = path_graph(&[3, 4]);
        let r = Realization::new(b3).unwrap();
        let word = r.compatible_coxeter_word(&[0, 1, 2]).unwrap();
        assert_eq!(word, vec![0, 1, 2]);
        let orders = r.graph().all_compatible_orders(&[0, 1, 2]).unwrap();
        let mats: HashSet<CoxMatrix> = orders.iter().map(|o| r.eval_word(o)).collect();
        assert_eq!(mats.len(), 1, "all compatible orders give one element");
        let a2 = path_graph(&[3]);
        let r = Realization::new(a2).unwrap();
        assert_ne!(r.eval_word(&[0, 1]), r.eval_word(&[1, 0]));
    }

    #[test]
    fn commuting_set_any_order() {
        let mut g = CoxeterGraph::new(vec!["a".into(), "b".into(), "c".into()]);
        g.add_edge(0, 1, 2).unwrap();
        g.add_edge(0, 2, 2).unwrap();
        g.add_edge(1, 2, 2).unwrap();
        let r = Realization::new(g).unwrap();
        let orders = r.graph().all_compatible_orders(&[0, 1, 2]).unwrap();
        assert_eq!(orders.len(), 6);
        let mats: HashSet<CoxMatrix> = orders.iter().map(|o| r.eval_word(o)).collect();
        assert_eq!(mats.len(), 1);
    }

    #[test]
    fn support_of_reflections_irreducible() {
        for labels in [vec![3u64, 3, 3], vec![3, 3, 4], vec![3, 4, 3], vec![5, 3]] {
            let g = path_graph(&labels);
            let n = labels.len() + 1;
            let r = Realization::new(g).unwrap();
            let subset: Vec<usize> = (0..n).collect();
            let en = r.enumerate_parabolic(&subset).unwrap();
            for t in r.reflections(&en) {
                let supp = r.support(&en.elements[t]);
                let comps = r.graph().irreducible_components(&supp);
                assert_eq!(comps.len(), 1, "reflection support must be irreducible");
            }
        }
    }

    #[test]
    fn cache_determinism() {
        let dir = tempfile::tempdir().unwrap();
        let g = path_graph(&[3, 4]);
        let r1 = Realization::with_options(
            g.clone(),
            DEFAULT_ENUMERATION_CAP,
            DiskCache::new(Some(dir.path())),
        )
        .unwrap();
        let e1 = r1.enumerate_parabolic(&[0, 1, 2]).unwrap();
        let r2 = Realization::with_options(
            g,
            DEFAULT_ENUMERATION_CAP,
            DiskCache::new(Some(dir.path())),
        )
        .unwrap();
        let e2 = r2.enumerate_parabolic(&[0, 1, 2]).unwrap();
        assert_eq!(e1.words, e2.words);
        assert_eq!(e1.rlen, e2.rlen);
        assert_eq!(e1.gen_action, e2.gen_action);
        assert_eq!(e1.elements, e2.elements);
    }

    #[test]
    fn words_identity_letters_twice() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for labels in [vec![3u64, 3, 4], vec![4, 3, 3]] {
            let g = path_graph(&labels);
            let r = Realization::new(g).unwrap();
            let n = labels.len() + 1;
            for _ in 0..60 {
                let len = rng.gen_range(0usize..=5);
                let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
                let m = r.eval_word(&w);
                let back = r.reduced_word(&m);
                let mut cand = w.clone();
                cand.extend(back.iter().rev());
                assert_eq!(r.eval_word(&cand), r.identity_matrix());
                let mut counts = vec![0usize; n];
                for &l in &cand {
                    counts[l] += 1;
                }
                for (l, &c) in counts.iter().enumerate() {
                    assert!(c == 0 || c >= 2, "letter {l} appears once in an identity word");
                }
            }
        }
    }

    #[test]
    fn palindrome_words_reduced() {
        for labels in [vec![3u64, 3], vec![3, 4], vec![3, 4, 3], vec![5, 3]] {
            let g = path_graph(&labels);
            let r = Realization::new(g).unwrap();
            let n = labels.len() + 1;
            let mut w: Vec<usize> = (0..n).collect();
            w.extend((0..n - 1).rev());
            let m = r.eval_word(&w);
            assert_eq!(r.reduced_word(&m).len(), 2 * n - 1);
        }
    }

    #[test]
    fn faithfulness_vs_braid_move_oracle() {
        use rand::{Rng, SeedableRng};
        fn braid_class(word: &[usize], g: &CoxeterGraph) -> HashSet<Vec<usize>> {
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            let mut queue = vec![word.to_vec()];
            seen.insert(word.to_vec());
            while let Some(w) = queue.pop() {
                for i in 0..w.len() {
                    for j in (i + 2)..=w.len() {
                        let seg = &w[i..j];
                        let (a, b) = (seg[0], seg[1]);
                        if a == b {
                            continue;
                        }
                        let m = match g.label(a, b) {
                            Some(m) => m as usize,
                            None => continue,
                        };
                        if seg.len() != m {
                            continue;
                        }
                        let alternating = seg
                            .iter()
                            .enumerate()
                            .all(|(k, &x)| x == if k % 2 == 0 { a } else { b });
                        if !alternating {
                            continue;
                        }
                        let mut w2 = w.clone();
                        for (k, x) in w2[i..j].iter_mut().enumerate() {
                            *x = if k % 2 == 0 { b } else { a };
                        }
                        if seen.insert(w2.clone()) {
                            queue.push(w2);
                        }
                    }
                }
            }
            seen
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for extra in [3u64, 4] {
            // infinite triangle groups
            let g = cycle_graph(&[3, extra, 3]);
            let r = Realization::new(g.clone()).unwrap();
            let mut words: Vec<Vec<usize>> = Vec::new();
            for _ in 0..40 {
                let len = rng.gen_range(1usize..=8);
                let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..3)).collect();
                if r.reduced_word(&r.eval_word(&w)).len() == w.len() {
                    words.push(w);
                }
            }
            for a in &words {
                for b in &words {
                    if a.len() != b.len() {
                        continue;
                    }
                    let same = r.eval_word(a) == r.eval_word(b);
                    let connected = braid_class(a, &g).contains(b);
                    assert_eq!(same, connected, "words {a:?} vs {b:?}");
                }
            }
        }
    }

    #[test]
    fn graph_json_round_trip() {
        let g = cycle_graph(&[3, 3, 3, 4]);
        let g2 = CoxeterGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g.vertices, g2.vertices);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.label(i, j), g2.label(i, j));
                assert_eq!(g.oriented(i, j), g2.oriented(i, j));
            }
        }
    }
}
