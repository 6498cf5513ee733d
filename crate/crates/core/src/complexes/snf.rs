use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Entry type the elimination can run over. Operations return `None` on
/// overflow so a fixed-width pass can be retried with big integers.
trait SnfEntry: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn floor_quot(&self, pivot: &Self) -> Self;
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn divides(&self, a: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl SnfEntry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn floor_quot(&self, pivot: &Self) -> Self {
        self.div_floor(pivot)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn divides(&self, a: &Self) -> bool {
        a % self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfEntry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn floor_quot(&self, pivot: &Self) -> Self {
        self.div_floor(pivot)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn divides(&self, a: &Self) -> bool {
        Zero::is_zero(&a.mod_floor(self))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

/// Invariant factors of an integer matrix given as rows.
///
/// Returns the nonzero diagonal `d_1 | d_2 | ... | d_r` of the Smith normal
/// form, each positive, with `r` the rank. Runs in `i64` and restarts in
/// arbitrary precision if any intermediate entry overflows.
pub fn smith_normal_form(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let work: Vec<Vec<i64>> = rows.to_vec();
    match eliminate(work) {
        Ok(d) => d,
        Err(Overflow) => {
            let big = rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            smith_normal_form_big(big)
        }
    }
}

/// Arbitrary-precision variant of [`smith_normal_form`].
pub fn smith_normal_form_big(rows: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    match eliminate(rows) {
        Ok(d) => d,
        Err(Overflow) => unreachable!("big integers do not overflow"),
    }
}

fn eliminate<T: SnfEntry>(mut a: Vec<Vec<T>>) -> Result<Vec<BigInt>, Overflow> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut divisors = Vec::new();

    for t in 0..nrows.min(ncols) {
        let Some((pi, pj)) = min_entry(&a, t..nrows, t..ncols) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);

        loop {
            // Clear column t and row t against the pivot; whenever a
            // remainder survives, a strictly smaller entry becomes pivot.
            for i in t + 1..nrows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].floor_quot(&a[t][t]);
                    let (head, tail) = a.split_at_mut(i);
                    row_sub_mul(&mut tail[0], &q, &head[t], t)?;
                }
            }
            for j in t + 1..ncols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].floor_quot(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        if !row[t].is_zero() {
                            row[j] = row[j].sub_mul(&q, &row[t]).ok_or(Overflow)?;
                        }
                    }
                }
            }

            let smaller = (t + 1..nrows)
                .map(|i| (i, t))
                .chain((t + 1..ncols).map(|j| (t, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| {
                    if a[i][j].abs_lt(&a[k][l]) {
                        std::cmp::Ordering::Less
                    } else if a[k][l].abs_lt(&a[i][j]) {
                        std::cmp::Ordering::Greater
                    } else {
                        std::cmp::Ordering::Equal
                    }
                });
            if let Some((i, j)) = smaller {
                if i != t {
                    a.swap(t, i);
                } else {
                    swap_cols(&mut a, t, j);
                }
                continue;
            }

            if a[t][t].is_unit() {
                break;
            }
            // Enforce the divisibility chain: fold an offending row into row t.
            let offending = (t + 1..nrows).find(|&i| {
                (t + 1..ncols).any(|j| !a[i][j].is_zero() && !a[t][t].divides(&a[i][j]))
            });
            match offending {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for j in t..ncols {
                        head[t][j] = head[t][j].add(&tail[0][j]).ok_or(Overflow)?;
                    }
                }
                None => break,
            }
        }
        divisors.push(a[t][t].to_big().abs());
    }
    Ok(divisors)
}

fn row_sub_mul<T: SnfEntry>(target: &mut [T], q: &T, pivot_row: &[T], from: usize) -> Result<(), Overflow> {
    for (x, p) in target.iter_mut().zip(pivot_row).skip(from) {
        if !p.is_zero() {
            *x = x.sub_mul(q, p).ok_or(Overflow)?;
        }
    }
    Ok(())
}

fn swap_cols<T>(a: &mut [Vec<T>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

fn min_entry<T: SnfEntry>(
    a: &[Vec<T>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[i][j];
            if v.is_zero() {
                continue;
            }
            if v.is_unit() {
                return Some((i, j));
            }
            match best {
                Some((bi, bj)) if !v.abs_lt(&a[bi][bj]) => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn one_by_one() {
        assert_eq!(smith_normal_form(&[vec![2]]), big(&[2]));
        assert_eq!(smith_normal_form(&[vec![-7]]), big(&[7]));
    }

    #[test]
    fn rank_one() {
        assert_eq!(smith_normal_form(&[vec![1, 0], vec![0, 0]]), big(&[1]));
    }

    #[test]
    fn empty_matrix() {
        assert!(smith_normal_form(&[]).is_empty());
        assert!(smith_normal_form(&[vec![], vec![]]).is_empty());
        assert!(smith_normal_form(&[vec![0, 0]]).is_empty());
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) ~ diag(1, 6)
        assert_eq!(smith_normal_form(&[vec![2, 0], vec![0, 3]]), big(&[1, 6]));
        assert_eq!(smith_normal_form(&[vec![4, 0], vec![0, 6]]), big(&[2, 12]));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let huge = i64::MAX / 2 + 1;
        let d = smith_normal_form(&[vec![huge, huge - 1], vec![huge - 1, huge]]);
        // det = huge^2 - (huge-1)^2 = 2*huge - 1, gcd of entries is 1
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(2 * (huge as i128) - 1)]);
    }
}
