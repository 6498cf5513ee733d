use std::collections::{BTreeMap, HashMap, HashSet};

use serde_json::{json, Value};

use crate::complexes::GradedChainComplex;
use crate::khovanov::{KhovanovComplex, LadybugMatcher, LadybugPolicy, Vertex};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowObject {
    pub id: String,
    pub grading: i32,
}

/// A framed point of a 0-dimensional moduli space `Mod(from, to)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedPoint {
    pub from: usize,
    pub to: usize,
    pub sign: i8,
    pub label: String,
}

/// A component of a 1-dimensional moduli space. Each endpoint is a broken
/// flowline `[p, q]` of point ids with `p.to == q.from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub from: usize,
    pub to: usize,
    pub endpoints: [[usize; 2]; 2],
}

/// How an edge of a polygon arises from lower moduli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    /// interval in `Mod(y, w)` times point in `Mod(w, z)`
    IntervalPoint { interval: usize, point: usize },
    /// point in `Mod(y, w)` times interval in `Mod(w, z)`
    PointInterval { point: usize, interval: usize },
}

/// A component of a 2-dimensional moduli space: a polygon whose vertices are
/// fully broken flowlines. `edges[k]` joins `cycle[k]` and `cycle[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub from: usize,
    pub to: usize,
    pub cycle: Vec<[usize; 3]>,
    pub edges: Vec<EdgeLabel>,
}

/// A flow category whose moduli spaces have been built up to dimension
/// `built_dim` (none before dimension 0 is built).
#[derive(Clone, Debug, Default)]
pub struct FlowCategory {
    pub objects: Vec<FlowObject>,
    pub points: Vec<FramedPoint>,
    pub intervals: Vec<Interval>,
    pub polygons: Vec<Polygon>,
    pub built_dim: Option<usize>,
}

/// Chooses which broken flowlines bound a common interval when four of them
/// connect the same pair of objects.
pub trait FlowlineMatcher {
    /// `flowlines` has length 4; returns two pairs of positions into it.
    fn pair(&self, cat: &FlowCategory, y: usize, z: usize, flowlines: &[[usize; 2]]) -> Result<[[usize; 2]; 2]>;
}

/// For categories where four flowlines never occur.
pub struct NoMatching;

impl FlowlineMatcher for NoMatching {
    fn pair(&self, cat: &FlowCategory, y: usize, z: usize, _: &[[usize; 2]]) -> Result<[[usize; 2]; 2]> {
        Err(Error::Moduli(format!(
            "four broken flowlines from {} to {} and no matching rule",
            cat.objects[y].id, cat.objects[z].id
        )))
    }
}

impl FlowlineMatcher for LadybugMatcher<'_> {
    fn pair(&self, cat: &FlowCategory, y: usize, z: usize, flowlines: &[[usize; 2]]) -> Result<[[usize; 2]; 2]> {
        let mids: [usize; 4] = std::array::from_fn(|k| cat.points[flowlines[k][0]].to);
        self.pair_middles(y, z, mids)
    }
}

impl FlowCategory {
    pub fn new(objects: Vec<FlowObject>) -> Self {
        FlowCategory { objects, ..Default::default() }
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.id == id)
    }

    pub fn gap(&self, y: usize, z: usize) -> i32 {
        self.objects[y].grading - self.objects[z].grading
    }

    /// Point ids grouped by source object.
    pub fn points_out(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for (k, p) in self.points.iter().enumerate() {
            out[p.from].push(k);
        }
        out
    }

    pub fn intervals_out(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for (k, i) in self.intervals.iter().enumerate() {
            out[i.from].push(k);
        }
        out
    }

    pub fn points_between(&self, y: usize, z: usize) -> impl Iterator<Item = &FramedPoint> {
        self.points.iter().filter(move |p| p.from == y && p.to == z)
    }

    pub fn intervals_between(&self, y: usize, z: usize) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(move |i| i.from == y && i.to == z)
    }

    pub fn polygons_between(&self, y: usize, z: usize) -> impl Iterator<Item = &Polygon> {
        self.polygons.iter().filter(move |p| p.from == y && p.to == z)
    }

    /// Name of a broken flowline, concatenating point labels in the order
    /// traversed, e.g. `"ab"`.
    pub fn flowline_name(&self, f: &[usize]) -> String {
        f.iter().map(|&p| self.points[p].label.as_str()).collect()
    }

    /// Broken flowlines `[p, q]` grouped by `(p.from, q.to)`.
    pub fn broken_flowlines(&self) -> BTreeMap<(usize, usize), Vec<[usize; 2]>> {
        let out = self.points_out();
        let mut map: BTreeMap<(usize, usize), Vec<[usize; 2]>> = BTreeMap::new();
        for (p, pt) in self.points.iter().enumerate() {
            for &q in &out[pt.to] {
                map.entry((pt.from, self.points[q].to)).or_default().push([p, q]);
            }
        }
        map
    }

    /// Fully broken flowlines `[p, q, r]` grouped by endpoints.
    pub fn fully_broken_flowlines(&self) -> BTreeMap<(usize, usize), Vec<[usize; 3]>> {
        let out = self.points_out();
        let mut map: BTreeMap<(usize, usize), Vec<[usize; 3]>> = BTreeMap::new();
        for (p, pt) in self.points.iter().enumerate() {
            for &q in &out[pt.to] {
                for &r in &out[self.points[q].to] {
                    map.entry((pt.from, self.points[r].to)).or_default().push([p, q, r]);
                }
            }
        }
        map
    }

    /// The chain complex the category refines: objects as generators and
    /// signed point counts as coefficients.
    pub fn chain_complex(&self) -> Result<GradedChainComplex> {
        let mut c = GradedChainComplex::new();
        for o in &self.objects {
            c.add_generator(o.id.clone(), o.grading)?;
        }
        for p in &self.points {
            c.add_term(p.from, p.to, p.sign as i64)?;
        }
        Ok(c)
    }

    pub fn to_json(&self) -> Value {
        let objects: Vec<Value> = self.objects.iter().map(|o| json!({"id": o.id, "grading": o.grading})).collect();
        let dim0: Vec<Value> = self
            .points
            .iter()
            .map(|p| json!({"from": self.objects[p.from].id, "to": self.objects[p.to].id, "sign": p.sign, "label": p.label}))
            .collect();
        let dim1: Vec<Value> = self
            .intervals
            .iter()
            .map(|i| {
                json!({
                    "from": self.objects[i.from].id,
                    "to": self.objects[i.to].id,
                    "endpoints": i.endpoints.iter().map(|e| e.map(|p| self.points[p].label.clone())).collect::<Vec<_>>(),
                })
            })
            .collect();
        let dim2: Vec<Value> = self
            .polygons
            .iter()
            .map(|g| {
                json!({
                    "from": self.objects[g.from].id,
                    "to": self.objects[g.to].id,
                    "cycle": g.cycle.iter().map(|t| t.map(|p| self.points[p].label.clone())).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({"objects": objects, "moduli": {"dim0": dim0, "dim1": dim1, "dim2": dim2}})
    }
}

/// One signed point per nonzero coefficient of the differential, labeled
/// `p0, p1, ...` in order.
pub fn build_moduli_dim0(c: &GradedChainComplex) -> Result<FlowCategory> {
    let objects = c.generators().map(|(_, id, g)| FlowObject { id: id.to_string(), grading: g }).collect();
    let mut cat = FlowCategory::new(objects);
    for k in 0..c.len() {
        for &(t, coeff) in c.boundary(k) {
            if coeff.abs() != 1 {
                return Err(Error::Moduli(format!("coefficient {coeff} from {} to {}", c.id(k), c.id(t))));
            }
            let label = format!("p{}", cat.points.len());
            cat.points.push(FramedPoint { from: k, to: t, sign: coeff as i8, label });
        }
    }
    cat.built_dim = Some(0);
    Ok(cat)
}

/// Pairs the broken flowlines of every index-2 pair into intervals.
pub fn build_moduli_dim1(mut cat: FlowCategory, matcher: &dyn FlowlineMatcher) -> Result<FlowCategory> {
    if cat.built_dim.is_none() {
        return Err(Error::Moduli("dimension 0 moduli are not built".into()));
    }
    cat.intervals.clear();
    cat.polygons.clear();
    for ((y, z), lines) in cat.broken_flowlines() {
        let pairs: Vec<[usize; 2]> = match lines.len() {
            2 => vec![[0, 1]],
            4 => matcher.pair(&cat, y, z, &lines)?.to_vec(),
            k => {
                return Err(Error::Moduli(format!(
                    "{k} broken flowlines from {} to {}",
                    cat.objects[y].id, cat.objects[z].id
                )))
            }
        };
        for [a, b] in pairs {
            cat.intervals.push(Interval { from: y, to: z, endpoints: [lines[a], lines[b]] });
        }
    }
    cat.built_dim = Some(1);
    Ok(cat)
}

/// Every edge of the boundary graph of index-3 moduli, grouped by endpoints:
/// `(vertex, vertex, label)`.
type BoundaryEdges = BTreeMap<(usize, usize), Vec<([usize; 3], [usize; 3], EdgeLabel)>>;

fn boundary_edges(cat: &FlowCategory) -> BoundaryEdges {
    let out = cat.points_out();
    let mut into = vec![Vec::new(); cat.objects.len()];
    for (p, pt) in cat.points.iter().enumerate() {
        into[pt.to].push(p);
    }
    let mut edges: BoundaryEdges = BTreeMap::new();
    for (k, iv) in cat.intervals.iter().enumerate() {
        let [[a, b], [c, d]] = iv.endpoints;
        for &r in &out[iv.to] {
            let label = EdgeLabel::IntervalPoint { interval: k, point: r };
            edges.entry((iv.from, cat.points[r].to)).or_default().push(([a, b, r], [c, d, r], label));
        }
        for &p in &into[iv.from] {
            let pt = &cat.points[p];
            let label = EdgeLabel::PointInterval { point: p, interval: k };
            edges.entry((pt.from, iv.to)).or_default().push(([p, a, b], [p, c, d], label));
        }
    }
    edges
}

/// Fills every cycle of the boundary graph of each index-3 pair with a
/// polygon. The graph must be 2-regular with even cycles of length ≥ 4.
pub fn build_moduli_dim2(mut cat: FlowCategory) -> Result<FlowCategory> {
    if cat.built_dim < Some(1) {
        return Err(Error::Moduli("dimension 1 moduli are not built".into()));
    }
    cat.polygons.clear();
    let mut edges = boundary_edges(&cat);
    for ((y, z), triples) in cat.fully_broken_flowlines() {
        let name = || format!("{} to {}", cat.objects[y].id, cat.objects[z].id);
        let es = edges.remove(&(y, z)).unwrap_or_default();
        let mut adj: HashMap<[usize; 3], Vec<usize>> = triples.iter().map(|t| (*t, Vec::new())).collect();
        for (k, (a, b, _)) in es.iter().enumerate() {
            for v in [a, b] {
                adj.get_mut(v)
                    .ok_or_else(|| Error::Moduli(format!("edge ends off the boundary from {}", name())))?
                    .push(k);
            }
        }
        if let Some((t, e)) = adj.iter().find(|(_, e)| e.len() != 2) {
            return Err(Error::Moduli(format!(
                "boundary graph from {} is not 2-regular: {t:?} has degree {}",
                name(),
                e.len()
            )));
        }
        let mut used = vec![false; es.len()];
        for start in &triples {
            let first = adj[start][0];
            if used[first] {
                continue;
            }
            let mut cycle = vec![*start];
            let mut labels = Vec::new();
            let mut cur = *start;
            let mut e = first;
            loop {
                used[e] = true;
                let (a, b, label) = es[e];
                labels.push(label);
                cur = if a == cur { b } else { a };
                if cur == *start {
                    break;
                }
                cycle.push(cur);
                e = *adj[&cur].iter().find(|&&f| f != e).expect("degree two");
            }
            if cycle.len() < 4 || cycle.len() % 2 == 1 {
                return Err(Error::Moduli(format!("boundary cycle of length {} from {}", cycle.len(), name())));
            }
            cat.polygons.push(Polygon { from: y, to: z, cycle, edges: labels });
        }
    }
    if let Some(((y, z), _)) = edges.iter().find(|(_, es)| !es.is_empty()) {
        return Err(Error::Moduli(format!(
            "boundary edges from {} to {} without fully broken flowlines",
            cat.objects[*y].id, cat.objects[*z].id
        )));
    }
    cat.built_dim = Some(2);
    Ok(cat)
}

/// Whether the moduli of dimension 1 up to `d` have exactly the boundary
/// prescribed by lower moduli.
pub fn check_boundary_coherence(cat: &FlowCategory, d: usize) -> bool {
    coherence_failures(cat, d).is_empty()
}

/// Human-readable reasons [`check_boundary_coherence`] fails.
///
/// Dimension 1: the endpoints of the intervals in each `Mod(y, z)` are the
/// broken flowlines from `y` to `z`, each used once, and the two endpoints of
/// an interval carry opposite framings. Dimension 2: the polygon vertices are
/// the fully broken flowlines, each used once, and the polygon edges are the
/// interval-point and point-interval products, each used once.
pub fn coherence_failures(cat: &FlowCategory, d: usize) -> Vec<String> {
    let mut failures = Vec::new();
    let sign = |f: &[usize]| f.iter().map(|&p| cat.points[p].sign as i32).product::<i32>();
    if d >= 1 {
        let expected = cat.broken_flowlines();
        let mut seen: HashMap<(usize, usize), Vec<[usize; 2]>> = HashMap::new();
        for (k, iv) in cat.intervals.iter().enumerate() {
            let mut valid = true;
            for e in iv.endpoints {
                let [p, q] = e;
                let ok = p < cat.points.len()
                    && q < cat.points.len()
                    && cat.points[p].from == iv.from
                    && cat.points[p].to == cat.points[q].from
                    && cat.points[q].to == iv.to;
                if !ok {
                    valid = false;
                    failures.push(format!("interval {k} has an endpoint that is not a broken flowline"));
                }
                seen.entry((iv.from, iv.to)).or_default().push(e);
            }
            if iv.endpoints[0] == iv.endpoints[1] {
                failures.push(format!("interval {k} has equal endpoints"));
            } else if valid && sign(&iv.endpoints[0]) == sign(&iv.endpoints[1]) {
                failures.push(format!("interval {k} joins equally framed endpoints"));
            }
        }
        for (key, lines) in &expected {
            let mut got = seen.remove(key).unwrap_or_default();
            got.sort_unstable();
            let mut want = lines.clone();
            want.sort_unstable();
            if got != want {
                failures.push(format!(
                    "Mod({}, {}) has boundary {:?}, expected {:?}",
                    cat.objects[key.0].id, cat.objects[key.1].id, got, want
                ));
            }
        }
        for key in seen.keys() {
            failures.push(format!("intervals from {} to {} have no broken flowlines", cat.objects[key.0].id, cat.objects[key.1].id));
        }
    }
    if d >= 2 {
        let mut want_edges: HashSet<EdgeLabel> = HashSet::new();
        let mut edge_ends: HashMap<EdgeLabel, ([usize; 3], [usize; 3])> = HashMap::new();
        for es in boundary_edges(cat).into_values() {
            for (a, b, l) in es {
                want_edges.insert(l);
                edge_ends.insert(l, (a, b));
            }
        }
        let expected = cat.fully_broken_flowlines();
        let mut seen: HashMap<(usize, usize), Vec<[usize; 3]>> = HashMap::new();
        let mut seen_edges: HashSet<EdgeLabel> = HashSet::new();
        for (k, g) in cat.polygons.iter().enumerate() {
            seen.entry((g.from, g.to)).or_default().extend(g.cycle.iter().copied());
            if g.edges.len() != g.cycle.len() {
                failures.push(format!("polygon {k} has {} vertices and {} edges", g.cycle.len(), g.edges.len()));
                continue;
            }
            for (e, l) in g.edges.iter().enumerate() {
                let (a, b) = (g.cycle[e], g.cycle[(e + 1) % g.cycle.len()]);
                match edge_ends.get(l) {
                    Some(&(u, v)) if (u, v) == (a, b) || (u, v) == (b, a) => {}
                    _ => failures.push(format!("polygon {k} edge {e} is not a product of lower moduli")),
                }
                if !seen_edges.insert(*l) {
                    failures.push(format!("polygon {k} edge {e} is used twice"));
                }
            }
        }
        if seen_edges != want_edges {
            failures.push(format!("{} of {} boundary products appear as polygon edges", seen_edges.len(), want_edges.len()));
        }
        for (key, lines) in &expected {
            let mut got = seen.remove(key).unwrap_or_default();
            got.sort_unstable();
            if &got != lines {
                failures.push(format!(
                    "Mod({}, {}) polygons have {} corners, expected {}",
                    cat.objects[key.0].id,
                    cat.objects[key.1].id,
                    got.len(),
                    lines.len()
                ));
            }
        }
    }
    failures
}

/// The hypercube flow category of `f_n`: objects are the vertices of
/// `{0,1}^n` graded by weight, with a framed point on every edge signed by
/// the standard sign assignment. Moduli are built through dimension 2.
pub fn hypercube_category(n: usize) -> Result<FlowCategory> {
    if n > 6 {
        return Err(Error::OutOfRange(format!("hypercube of dimension {n}")));
    }
    let signs = crate::khovanov::standard_sign_assignment(n);
    let mut c = GradedChainComplex::new();
    for v in Vertex::all(n) {
        c.add_generator(v.to_string(), v.weight() as i32)?;
    }
    for v in Vertex::all(n) {
        for i in (0..n).filter(|&i| v.bit(i)) {
            c.add_term(v.mask as usize, v.flip(i).mask as usize, signs.sign(v, i))?;
        }
    }
    let mut cat = build_moduli_dim0(&c)?;
    for p in &mut cat.points {
        p.label = format!("{}>{}", cat.objects[p.from].id, cat.objects[p.to].id);
    }
    if n == 2 {
        for p in &mut cat.points {
            p.label = match (cat.objects[p.from].id.as_str(), cat.objects[p.to].id.as_str()) {
                ("11", "10") => "a",
                ("10", "00") => "b",
                ("11", "01") => "c",
                ("01", "00") => "d",
                _ => unreachable!(),
            }
            .to_string();
        }
    }
    let cat = build_moduli_dim1(cat, &NoMatching)?;
    build_moduli_dim2(cat)
}

/// The Lipshitz–Sarkar category of a Khovanov complex, with moduli through
/// dimension 2, using `policy` on every ladybug face.
pub fn khovanov_category(kc: &KhovanovComplex, policy: LadybugPolicy) -> Result<FlowCategory> {
    let cat = build_moduli_dim0(&kc.complex)?;
    let cat = build_moduli_dim1(cat, &LadybugMatcher { kc, policy })?;
    build_moduli_dim2(cat)
}
