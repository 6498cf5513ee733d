/// An ordered partition of `{1..n}`; each block sorted ascending.
pub type OrderedPartition = Vec<Vec<usize>>;

/// The permutohedron `Π^{n-1}`, the convex hull of all permutations of
/// `(1, ..., n)`, described by its face lattice.
///
/// The face for `(B_1, ..., B_k)` is where the coordinates in `B_1` take the
/// smallest `|B_1|` values, those in `B_2` the next ones, and so on. It has
/// dimension `n - k`.
#[derive(Clone, Debug)]
pub struct Permutohedron {
    pub n: usize,
    /// Coordinate vectors, lexicographic.
    pub vertices: Vec<Vec<usize>>,
    /// `faces[d]` lists the faces of dimension `d`.
    pub faces: Vec<Vec<OrderedPartition>>,
}

pub fn permutohedron(n: usize) -> Permutohedron {
    assert!(n >= 1, "permutohedron needs n >= 1");
    let mut vertices = Vec::new();
    permutations(&mut (1..=n).collect(), 0, &mut vertices);
    vertices.sort();
    let mut faces = vec![Vec::new(); n];
    for p in ordered_partitions(n) {
        faces[n - p.len()].push(p);
    }
    for f in &mut faces {
        f.sort();
    }
    Permutohedron { n, vertices, faces }
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

fn ordered_partitions(n: usize) -> Vec<OrderedPartition> {
    // assign each element a block index, keep surjective assignments
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    loop {
        let k = assign.iter().max().map_or(0, |m| m + 1);
        if (0..k).all(|b| assign.contains(&b)) {
            let mut blocks = vec![Vec::new(); k];
            for (e, &b) in assign.iter().enumerate() {
                blocks[b].push(e + 1);
            }
            out.push(blocks);
        }
        // next assignment in base n
        let mut i = 0;
        while i < n {
            assign[i] += 1;
            if assign[i] < n {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out
}

impl Permutohedron {
    pub fn dimension(&self) -> usize {
        self.n - 1
    }

    /// Face counts by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// The ordered partition into singletons that names vertex `v`.
    pub fn vertex_partition(v: &[usize]) -> OrderedPartition {
        let mut blocks = vec![Vec::new(); v.len()];
        for (coord, &value) in v.iter().enumerate() {
            blocks[value - 1].push(coord + 1);
        }
        blocks
    }

    /// Whether vertex `v` lies on face `f`.
    pub fn contains(f: &OrderedPartition, v: &[usize]) -> bool {
        let mut low = 0;
        for block in f {
            let high = low + block.len();
            if !block.iter().all(|&c| v[c - 1] > low && v[c - 1] <= high) {
                return false;
            }
            low = high;
        }
        true
    }

    /// Edges as pairs of vertex indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let faces = self.faces.get(1).map_or(&[][..], Vec::as_slice);
        faces
            .iter()
            .map(|f| {
                let ends: Vec<usize> = (0..self.vertices.len())
                    .filter(|&k| Self::contains(f, &self.vertices[k]))
                    .collect();
                (ends[0], ends[1])
            })
            .collect()
    }

    /// The boundary of the 2-dimensional permutohedron as a cyclic list of
    /// vertex indices. `None` unless `n == 3`.
    pub fn boundary_cycle(&self) -> Option<Vec<usize>> {
        if self.n != 3 {
            return None;
        }
        let edges = self.edges();
        let mut cycle = vec![0];
        let mut prev = usize::MAX;
        loop {
            let cur = *cycle.last().unwrap();
            let next = edges
                .iter()
                .filter_map(|&(a, b)| if a == cur { Some(b) } else if b == cur { Some(a) } else { None })
                .find(|&w| w != prev)?;
            if next == 0 {
                return Some(cycle);
            }
            prev = cur;
            cycle.push(next);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_face_counts() {
        assert_eq!(permutohedron(1).f_vector(), vec![1]);
        assert_eq!(permutohedron(2).f_vector(), vec![2, 1]);
        assert_eq!(permutohedron(3).f_vector(), vec![6, 6, 1]);
    }

    #[test]
    fn hexagon_boundary() {
        let p = permutohedron(3);
        let c = p.boundary_cycle().unwrap();
        assert_eq!(c.len(), 6);
        let mut sorted = c.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn vertex_partition_is_a_vertex_face() {
        let p = permutohedron(3);
        for v in &p.vertices {
            let f = Permutohedron::vertex_partition(v);
            assert!(p.faces[0].contains(&f));
            assert!(Permutohedron::contains(&f, v));
        }
    }
}
