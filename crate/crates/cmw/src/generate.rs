//! Seeded random instance generation: class-PC graphs assembled from basic
//! 5-cycles and pendant pairs with girth-preserving bridges, and plain random
//! graphs rejected until girth >= 5. Weight assignment can be left random,
//! forced to satisfy the Cohen-Macaulay weight conditions, or forced to
//! violate exactly one chosen condition.

use rand::Rng;
use thiserror::Error;

use crate::conditions::ConditionId;
use crate::graph::WeightedGraph;
use crate::structure::girth;
use crate::Weight;

const RETRY_LIMIT: usize = 300;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("no class-PC decomposition of {0} vertices into 5-cycles and pendant pairs")]
    UnrepresentableSize(usize),
    #[error("construction retry limit exceeded")]
    RetryLimitExceeded,
    #[error("forcing mode requires max weight >= 2")]
    NeedsLargerWeights,
    #[error("forcing condition {0:?} requires a cycle, but none fits in the size budget")]
    NeedsCycle(ConditionId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Independent uniform weights.
    Random,
    /// Satisfy conditions (a), (b), (c).
    Satisfy,
    /// Satisfy all conditions except the chosen one.
    Violate(ConditionId),
}

#[derive(Debug, Clone, Copy)]
pub struct ClassPcOptions {
    pub n: usize,
    pub max_weight: Weight,
    pub mode: WeightMode,
}

struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    /// vertex index ranges of the 5-cycles, in traversal order
    cycles: Vec<[usize; 5]>,
    /// (stem, leaf) pendant pairs
    pairs: Vec<(usize, usize)>,
}

impl Builder {
    fn new(b: usize, p: usize) -> Self {
        let n = 5 * b + 2 * p;
        let mut builder = Builder {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            cycles: Vec::new(),
            pairs: Vec::new(),
        };
        for c in 0..b {
            let base = 5 * c;
            let cyc = [base, base + 1, base + 2, base + 3, base + 4];
            for k in 0..5 {
                builder.add_edge(cyc[k], cyc[(k + 1) % 5]);
            }
            builder.cycles.push(cyc);
        }
        for j in 0..p {
            let stem = 5 * b + 2 * j;
            builder.add_edge(stem, stem + 1);
            builder.pairs.push((stem, stem + 1));
        }
        builder
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.push((a.min(b), a.max(b)));
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn dist(&self, a: usize, b: usize) -> usize {
        let mut d = vec![usize::MAX; self.n];
        d[a] = 0;
        let mut q = std::collections::VecDeque::from([a]);
        while let Some(x) = q.pop_front() {
            if x == b {
                return d[b];
            }
            for &y in &self.adj[x] {
                if d[y] == usize::MAX {
                    d[y] = d[x] + 1;
                    q.push_back(y);
                }
            }
        }
        usize::MAX
    }

    fn on_cycle(&self, v: usize) -> Option<(usize, usize, usize)> {
        for (c, cyc) in self.cycles.iter().enumerate() {
            if let Some(k) = cyc.iter().position(|&x| x == v) {
                return Some((c, cyc[(k + 1) % 5], cyc[(k + 4) % 5]));
            }
        }
        None
    }

    /// A bridge endpoint is a stem or a cycle vertex whose cycle neighbors
    /// both still have degree 2 (keeping the cycle basic).
    fn can_attach(&self, v: usize) -> bool {
        if self.pairs.iter().any(|&(s, _)| s == v) {
            return true;
        }
        match self.on_cycle(v) {
            Some((_, next, prev)) => self.degree(next) == 2 && self.degree(prev) == 2,
            None => false,
        }
    }

    /// Adds `v-w` when it keeps girth >= 5 and creates no new 5-cycle:
    /// endpoints at distance >= 5 (or in different components).
    fn try_bridge(&mut self, v: usize, w: usize) -> bool {
        if v == w || !self.can_attach(v) || !self.can_attach(w) {
            return false;
        }
        if self.dist(v, w) < 5 {
            return false;
        }
        self.add_edge(v, w);
        true
    }

    fn attachment_pool(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.can_attach(v)).collect()
    }

    fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut c = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = c;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = c;
                        stack.push(y);
                    }
                }
            }
            c += 1;
        }
        comp
    }
}

fn decompositions(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 0..=(n / 5) {
        let rest = n - 5 * b;
        if rest.is_multiple_of(2) && (b, rest / 2) != (0, 0) {
            out.push((b, rest / 2));
        }
    }
    out
}

/// Random class-PC graph on exactly `opts.n` vertices.
pub fn class_pc_graph<R: Rng>(
    opts: &ClassPcOptions,
    rng: &mut R,
) -> Result<WeightedGraph, GenError> {
    let mut decomps = decompositions(opts.n);
    if matches!(
        opts.mode,
        WeightMode::Violate(ConditionId::B) | WeightMode::Violate(ConditionId::C)
    ) {
        decomps.retain(|&(b, _)| b >= 1);
        if decomps.is_empty() {
            let c = match opts.mode {
                WeightMode::Violate(c) => c,
                _ => unreachable!(),
            };
            return Err(GenError::NeedsCycle(c));
        }
    }
    if matches!(opts.mode, WeightMode::Violate(ConditionId::A)) {
        // need a pendant pair plus something to attach its stem to
        decomps.retain(|&(b, p)| p >= 1 && (b >= 1 || p >= 2));
        if decomps.is_empty() {
            return Err(GenError::UnrepresentableSize(opts.n));
        }
    }
    if decomps.is_empty() {
        return Err(GenError::UnrepresentableSize(opts.n));
    }
    if opts.max_weight < 2 && !matches!(opts.mode, WeightMode::Random | WeightMode::Satisfy) {
        return Err(GenError::NeedsLargerWeights);
    }

    let (b, p) = decomps[rng.gen_range(0..decomps.len())];
    let mut builder = Builder::new(b, p);

    // bridge components together, then sprinkle extra bridges
    for _ in 0..RETRY_LIMIT {
        let comp = builder.components();
        if comp.iter().all(|&c| c == 0) {
            break;
        }
        let pool = builder.attachment_pool();
        let candidates: Vec<(usize, usize)> = pool
            .iter()
            .flat_map(|&v| pool.iter().map(move |&w| (v, w)))
            .filter(|&(v, w)| v < w && comp[v] != comp[w])
            .collect();
        if candidates.is_empty() {
            break; // stays disconnected; acceptable
        }
        let (v, w) = candidates[rng.gen_range(0..candidates.len())];
        builder.try_bridge(v, w);
    }
    let extra = rng.gen_range(0..=b + p);
    for _ in 0..extra {
        let pool = builder.attachment_pool();
        if pool.len() < 2 {
            break;
        }
        let v = pool[rng.gen_range(0..pool.len())];
        let w = pool[rng.gen_range(0..pool.len())];
        builder.try_bridge(v, w);
    }

    // condition-specific structural requirements
    match opts.mode {
        WeightMode::Violate(ConditionId::A) => {
            let has_site = builder.pairs.iter().any(|&(s, _)| builder.degree(s) >= 2);
            if !has_site {
                let mut done = false;
                for _ in 0..RETRY_LIMIT {
                    let (s, _) = builder.pairs[rng.gen_range(0..builder.pairs.len())];
                    let pool = builder.attachment_pool();
                    let w = pool[rng.gen_range(0..pool.len())];
                    if builder.try_bridge(s, w) {
                        done = true;
                        break;
                    }
                }
                if !done {
                    return Err(GenError::RetryLimitExceeded);
                }
            }
        }
        WeightMode::Violate(ConditionId::C) => {
            let has_site = builder
                .cycles
                .iter()
                .flatten()
                .any(|&v| builder.degree(v) >= 3);
            if !has_site {
                let mut done = false;
                for _ in 0..RETRY_LIMIT {
                    let cyc = builder.cycles[rng.gen_range(0..builder.cycles.len())];
                    let v = cyc[rng.gen_range(0..5)];
                    let pool = builder.attachment_pool();
                    if pool.len() < 2 {
                        break;
                    }
                    let w = pool[rng.gen_range(0..pool.len())];
                    if builder.try_bridge(v, w) {
                        done = true;
                        break;
                    }
                }
                if !done {
                    return Err(GenError::RetryLimitExceeded);
                }
            }
        }
        _ => {}
    }

    let weights = assign_weights(&builder, opts, rng)?;
    let labels: Vec<String> = (0..builder.n).map(|i| format!("v{i:02}")).collect();
    let edges = builder
        .edges
        .iter()
        .zip(&weights)
        .map(|(&(a, b), &w)| (labels[a].clone(), labels[b].clone(), w))
        .collect();
    Ok(WeightedGraph::from_parts(labels, edges).unwrap())
}

fn assign_weights<R: Rng>(
    builder: &Builder,
    opts: &ClassPcOptions,
    rng: &mut R,
) -> Result<Vec<Weight>, GenError> {
    let maxw = opts.max_weight.max(1);
    let mut w: Vec<Weight> = (0..builder.edges.len())
        .map(|_| rng.gen_range(1..=maxw))
        .collect();
    if matches!(opts.mode, WeightMode::Random) {
        return Ok(w);
    }

    let edge_index = |a: usize, b: usize| -> usize {
        builder
            .edges
            .iter()
            .position(|&(x, y)| (x, y) == (a.min(b), a.max(b)))
            .expect("edge exists")
    };

    // (b): per cycle, a balanced vertex whose cycle neighbors have degree 2
    for cyc in &builder.cycles {
        let k = (0..5)
            .find(|&k| {
                builder.degree(cyc[(k + 1) % 5]) == 2 && builder.degree(cyc[(k + 4) % 5]) == 2
            })
            .expect("a basic 5-cycle always has a vertex with degree-2 neighbors");
        let m = rng.gen_range(1..=maxw);
        let p = rng.gen_range(m..=maxw);
        let r = rng.gen_range(m..=maxw);
        let q = rng.gen_range(1..=p.min(r));
        let assign: [Weight; 5] = [m, p, q, r, m];
        for i in 0..5 {
            w[edge_index(cyc[(k + i) % 5], cyc[(k + i + 1) % 5])] = assign[i];
        }
    }

    // (c): bridges at high-degree cycle vertices stay below the cycle edges
    let bridge_cap = |w: &[Weight], a: usize| -> Weight {
        match builder.on_cycle(a) {
            Some((_, next, prev)) => w[edge_index(a, next)].min(w[edge_index(a, prev)]),
            None => maxw,
        }
    };
    let is_structural: std::collections::HashSet<usize> = builder
        .cycles
        .iter()
        .flat_map(|cyc| (0..5).map(move |k| edge_index(cyc[k], cyc[(k + 1) % 5])))
        .chain(builder.pairs.iter().map(|&(s, l)| edge_index(s, l)))
        .collect();
    for e in 0..builder.edges.len() {
        if is_structural.contains(&e) {
            continue;
        }
        let (a, b) = builder.edges[e];
        let cap = bridge_cap(&w, a).min(bridge_cap(&w, b));
        w[e] = rng.gen_range(1..=cap);
    }

    // (a): pendant edges dominate everything adjacent
    for &(s, l) in &builder.pairs {
        let floor = builder.adj[s]
            .iter()
            .filter(|&&x| x != l)
            .map(|&x| w[edge_index(s, x)])
            .max()
            .unwrap_or(1);
        w[edge_index(s, l)] = rng.gen_range(floor..=maxw);
    }

    match opts.mode {
        WeightMode::Random => unreachable!(),
        WeightMode::Satisfy => Ok(w),
        WeightMode::Violate(ConditionId::A) => {
            let (s, l) = *builder
                .pairs
                .iter()
                .find(|&&(s, _)| builder.degree(s) >= 2)
                .expect("ensured above");
            // lift one adjacent bridge to 2, keeping (c) happy at its far end
            let other = *builder.adj[s].iter().find(|&&x| x != l).unwrap();
            if let Some((c, _, _)) = builder.on_cycle(other) {
                let cyc = builder.cycles[c];
                for k in 0..5 {
                    w[edge_index(cyc[k], cyc[(k + 1) % 5])] = 2;
                }
            }
            // pendant edges at the far end must still dominate
            if let Some(&(s2, l2)) = builder.pairs.iter().find(|&&(s2, _)| s2 == other) {
                w[edge_index(s2, l2)] = maxw.max(2);
            }
            w[edge_index(s, other)] = 2;
            w[edge_index(s, l)] = 1;
            Ok(w)
        }
        WeightMode::Violate(ConditionId::B) => {
            let cyc = builder.cycles[rng.gen_range(0..builder.cycles.len())];
            // the rotation pattern 2,1,1,1,2 admits no balanced vertex
            let pattern: [Weight; 5] = [2, 1, 1, 1, 2];
            for k in 0..5 {
                w[edge_index(cyc[k], cyc[(k + 1) % 5])] = pattern[k];
            }
            // keep (c) at this cycle's attachment points
            for &v in &cyc {
                if builder.degree(v) > 2 {
                    for &x in &builder.adj[v] {
                        if !cyc.contains(&x) {
                            w[edge_index(v, x)] = 1;
                            refresh_pendants(builder, &mut w, edge_index, maxw);
                        }
                    }
                }
            }
            Ok(w)
        }
        WeightMode::Violate(ConditionId::C) => {
            let &v = builder
                .cycles
                .iter()
                .flatten()
                .find(|&&v| builder.degree(v) >= 3)
                .expect("ensured above");
            let (c, _, _) = builder.on_cycle(v).unwrap();
            let cyc = builder.cycles[c];
            for k in 0..5 {
                w[edge_index(cyc[k], cyc[(k + 1) % 5])] = 1;
            }
            let spoke = *builder.adj[v].iter().find(|&&x| !cyc.contains(&x)).unwrap();
            w[edge_index(v, spoke)] = 2;
            refresh_pendants(builder, &mut w, edge_index, maxw);
            Ok(w)
        }
    }
}

fn refresh_pendants(
    builder: &Builder,
    w: &mut [Weight],
    edge_index: impl Fn(usize, usize) -> usize,
    maxw: Weight,
) {
    for &(s, l) in &builder.pairs {
        let floor = builder.adj[s]
            .iter()
            .filter(|&&x| x != l)
            .map(|&x| w[edge_index(s, x)])
            .max()
            .unwrap_or(1);
        if w[edge_index(s, l)] < floor {
            w[edge_index(s, l)] = maxw.max(floor);
        }
    }
}

/// Deterministic mixed instance stream for cross-validation drivers: cycles
/// through satisfying, violating and unconstrained class-PC shapes, with
/// every fourth draw a plain girth >= 5 graph. All randomness comes from the
/// seed and index.
pub fn mixed_instance(seed: u64, index: u64, max_n: usize, max_weight: Weight) -> WeightedGraph {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let modes = [
        WeightMode::Satisfy,
        WeightMode::Random,
        WeightMode::Violate(ConditionId::A),
        WeightMode::Satisfy,
        WeightMode::Violate(ConditionId::B),
        WeightMode::Random,
        WeightMode::Violate(ConditionId::C),
    ];
    if index % 4 == 3 {
        let n = rng.gen_range(1..=max_n);
        if let Ok(g) = girth5_graph(n, max_weight, &mut rng) {
            return g;
        }
    }
    let mode = modes[(index as usize / 4) % modes.len()];
    for _ in 0..20 {
        let n = rng.gen_range(2..=max_n);
        match class_pc_graph(
            &ClassPcOptions {
                n,
                max_weight,
                mode,
            },
            &mut rng,
        ) {
            Ok(g) => return g,
            Err(GenError::UnrepresentableSize(_))
            | Err(GenError::NeedsCycle(_))
            | Err(GenError::RetryLimitExceeded) => continue,
            Err(e) => unreachable!("generator error: {e}"),
        }
    }
    let mut fallback = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
    fallback.set_stream(index);
    girth5_graph(max_n.min(8), max_weight, &mut fallback).expect("fallback instance")
}

/// Random graph on `n` vertices rejected until girth >= 5; forests count.
pub fn girth5_graph<R: Rng>(
    n: usize,
    max_weight: Weight,
    rng: &mut R,
) -> Result<WeightedGraph, GenError> {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
    let p = if n > 1 { 1.6 / n as f64 } else { 0.0 };
    for _ in 0..RETRY_LIMIT {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((
                        labels[i].clone(),
                        labels[j].clone(),
                        rng.gen_range(1..=max_weight),
                    ));
                }
            }
        }
        let g = WeightedGraph::from_parts(labels.clone(), edges).unwrap();
        if girth(&g).is_at_least(5) {
            return Ok(g);
        }
    }
    Err(GenError::RetryLimitExceeded)
}
