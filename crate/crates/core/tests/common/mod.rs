#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

/// Seeded generator; `FLOWKNOT_SEED` overrides the default.
pub fn rng() -> ChaCha8Rng {
    let seed = std::env::var("FLOWKNOT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed);
    ChaCha8Rng::seed_from_u64(seed)
}

/// PD code of the closure of a braid word on `strands` strands. Letter `k`
/// (nonzero) is the generator crossing positions `|k|-1` and `|k|`, positive
/// when `k > 0`. Returns the crossings and the number of untouched strands.
pub fn braid_closure(strands: usize, word: &[i32]) -> (Vec<[u32; 4]>, usize) {
    let mut next = 0u32;
    let mut fresh = || {
        next += 1;
        next
    };
    let start: Vec<u32> = (0..strands).map(|_| fresh()).collect();
    let mut cur = start.clone();
    let mut xs = Vec::new();
    for &k in word {
        let p = k.unsigned_abs() as usize - 1;
        let (bl, br) = (cur[p], cur[p + 1]);
        let (tl, tr) = (fresh(), fresh());
        xs.push(if k > 0 { [bl, br, tr, tl] } else { [br, tr, tl, bl] });
        cur[p] = tl;
        cur[p + 1] = tr;
    }
    // close up: the top label at each position is the bottom label there
    let rename = |l: u32| match cur.iter().position(|&c| c == l) {
        Some(p) => start[p],
        None => l,
    };
    let xs: Vec<[u32; 4]> = xs.into_iter().map(|x| x.map(rename)).collect();
    let untouched = (0..strands).filter(|&p| cur[p] == start[p]).count();
    (xs, untouched)
}

/// A random braid word with `len` letters on `strands` strands.
pub fn random_word(rng: &mut impl Rng, strands: usize, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let k = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                k
            } else {
                -k
            }
        })
        .collect()
}

/// PD of the closure of σ1 σ1⁻¹: a 2-crossing diagram of the 2-component
/// unlink whose two crossings form a ladybug.
pub fn two_crossing_unlink() -> Vec<[u32; 4]> {
    braid_closure(2, &[1, -1]).0
}

/// Tilde grid homology rank over GF(2), computed from scratch: states as
/// permutations, rectangles as explicit square sets, `rank H = N - 2 rank ∂`.
/// Also returns whether `∂² = 0` mod 2.
pub fn brute_tilde_rank(x_marks: &[usize], o_marks: &[usize]) -> (usize, bool) {
    let n = x_marks.len();
    let mut states: Vec<Vec<usize>> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permutations(n, &mut perm, &mut states);
    states.sort();
    let index = |s: &[usize]| states.binary_search_by(|t| t.as_slice().cmp(s)).unwrap();
    let words = states.len().div_ceil(64);
    let mut rows = vec![vec![0u64; words]; states.len()];
    for (k, s) in states.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                // walk right from column a to b and up from row s[a] to s[b]
                let mut cols = vec![a];
                while (cols.last().unwrap() + 1) % n != b {
                    cols.push((cols.last().unwrap() + 1) % n);
                }
                let mut rws = vec![s[a]];
                while (rws.last().unwrap() + 1) % n != s[b] {
                    rws.push((rws.last().unwrap() + 1) % n);
                }
                let marked = cols.iter().any(|&c| rws.contains(&x_marks[c]) || rws.contains(&o_marks[c]));
                let occupied = cols[1..].iter().any(|&c| rws[1..].contains(&s[c]));
                if marked || occupied {
                    continue;
                }
                let mut t = s.clone();
                t.swap(a, b);
                let j = index(&t);
                rows[k][j / 64] ^= 1 << (j % 64);
            }
        }
    }
    // ∂² via row products
    let mut square_zero = true;
    for r in &rows {
        let mut acc = vec![0u64; words];
        for j in 0..states.len() {
            if r[j / 64] >> (j % 64) & 1 == 1 {
                for (w, v) in acc.iter_mut().zip(&rows[j]) {
                    *w ^= v;
                }
            }
        }
        square_zero &= acc.iter().all(|&w| w == 0);
    }
    let mut m = rows;
    let mut rank = 0;
    for col in 0..states.len() {
        let bit = |r: &Vec<u64>| r[col / 64] >> (col % 64) & 1 == 1;
        if let Some(p) = (rank..m.len()).find(|&i| bit(&m[i])) {
            m.swap(rank, p);
            let pivot = m[rank].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && bit(row) {
                    for (w, v) in row.iter_mut().zip(&pivot) {
                        *w ^= v;
                    }
                }
            }
            rank += 1;
        }
    }
    (states.len() - 2 * rank, square_zero)
}

fn heap_permutations(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, a, out);
        let j = if k % 2 == 0 { i } else { 0 };
        a.swap(j, k - 1);
    }
}

/// Every pair `(X, O)` of permutations of `0..n` with no common entry.
pub fn all_grids(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_permutations(n, &mut p, &mut perms);
    perms.sort();
    let mut out = Vec::new();
    for x in &perms {
        for o in &perms {
            if x.iter().zip(o).all(|(a, b)| a != b) {
                out.push((x.clone(), o.clone()));
            }
        }
    }
    out
}
