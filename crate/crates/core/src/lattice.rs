//! Integer linear algebra used by the polygon normal form and the toric
//! fibration solver: extended gcd and a column-style Hermite reduction that
//! yields a particular solution plus a kernel basis of `M e = b` over `Z`.

use crate::error::{Error, Result};

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    ext_gcd(a, b).0
}

/// Integer solutions of `M e = b`: a particular solution and a basis of the kernel lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: Vec<i128>,
    pub kernel: Vec<Vec<i128>>,
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("integer system"))
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("integer system"))
}

/// Replaces columns `p` and `c` of both `h` and `u` by the unimodular combination
/// `[col_p, col_c] * [[x, y], [z, w]]`.
fn combine_columns(
    h: &mut [Vec<i128>],
    u: &mut [Vec<i128>],
    p: usize,
    c: usize,
    (x, y, z, w): (i128, i128, i128, i128),
) -> Result<()> {
    for row in h.iter_mut().chain(u.iter_mut()) {
        let (vp, vc) = (row[p], row[c]);
        row[p] = add(mul(vp, x)?, mul(vc, z)?)?;
        row[c] = add(mul(vp, y)?, mul(vc, w)?)?;
    }
    Ok(())
}

/// Solves `rows * e = rhs` over the integers by column Hermite reduction.
///
/// Returns `Ok(None)` when the system has no integral solution.
pub fn solve_integer_system(rows: &[Vec<i128>], rhs: &[i128]) -> Result<Option<IntegerSolution>> {
    let r = rows.len();
    assert_eq!(r, rhs.len(), "row count must match right-hand side");
    let k = rows.first().map_or(0, Vec::len);
    let mut h: Vec<Vec<i128>> = rows.to_vec();
    let mut u: Vec<Vec<i128>> = (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect();

    // pivot_of_row[i] = Some(column) when row i received a pivot.
    let mut pivot_of_row = vec![None; r];
    let mut piv = 0usize;
    for i in 0..r {
        if piv >= k {
            break;
        }
        for c in piv + 1..k {
            let (a, b) = (h[i][piv], h[i][c]);
            if b == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(a, b);
            // [a b] * [[s, -b/g], [t, a/g]] = [g 0], determinant 1.
            combine_columns(&mut h, &mut u, piv, c, (s, -b / g, t, a / g))?;
        }
        if h[i][piv] == 0 {
            continue;
        }
        if h[i][piv] < 0 {
            for row in h.iter_mut().chain(u.iter_mut()) {
                row[piv] = -row[piv];
            }
        }
        pivot_of_row[i] = Some(piv);
        piv += 1;
    }
    let rank = piv;

    // forward substitution on the echelon form
    let mut y = vec![0i128; k];
    for i in 0..r {
        let mut acc = rhs[i];
        for (j, yj) in y.iter().enumerate().take(rank) {
            if pivot_of_row[i] == Some(j) {
                continue;
            }
            acc = acc
                .checked_sub(mul(h[i][j], *yj)?)
                .ok_or(Error::Overflow("integer system"))?;
        }
        match pivot_of_row[i] {
            Some(p) => {
                if acc % h[i][p] != 0 {
                    return Ok(None);
                }
                y[p] = acc / h[i][p];
            }
            None => {
                if acc != 0 {
                    return Ok(None);
                }
            }
        }
    }

    let mut particular = vec![0i128; k];
    for (row, out) in u.iter().zip(particular.iter_mut()) {
        let mut acc = 0i128;
        for (uij, yj) in row.iter().zip(&y) {
            acc = add(acc, mul(*uij, *yj)?)?;
        }
        *out = acc;
    }
    let kernel = (rank..k)
        .map(|c| u.iter().map(|row| row[c]).collect())
        .collect();
    Ok(Some(IntegerSolution { particular, kernel }))
}

pub fn l1(v: &[i128]) -> i128 {
    v.iter().map(|x| x.abs()).sum()
}

fn add_scaled(a: &[i128], b: &[i128], sign: i128) -> Vec<i128> {
    a.iter().zip(b).map(|(x, y)| x + sign * y).collect()
}

/// Greedy L1 size reduction of a kernel basis: replace `b_i` by `b_i ± b_j`
/// while that shortens it.
pub fn reduce_basis(basis: &mut [Vec<i128>]) {
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for sign in [1, -1] {
                    let cand = add_scaled(&basis[i], &basis[j], sign);
                    if l1(&cand) < l1(&basis[i]) {
                        basis[i] = cand;
                        changed = true;
                    }
                }
            }
        }
    }
}

/// Walks `start + kernel` downhill in L1 norm, using single basis vectors and
/// pairwise sums/differences as moves. Ties between equally short moves go to
/// the lexicographically smallest vector, so the result is deterministic.
pub fn descend_l1(start: Vec<i128>, kernel: &[Vec<i128>]) -> Vec<i128> {
    let mut moves: Vec<Vec<i128>> = Vec::new();
    for (i, b) in kernel.iter().enumerate() {
        moves.push(b.clone());
        moves.push(b.iter().map(|x| -x).collect());
        for c in &kernel[i + 1..] {
            for (sb, sc) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                moves.push(b.iter().zip(c).map(|(x, y)| sb * x + sc * y).collect());
            }
        }
    }
    let mut current = start;
    loop {
        let best = moves
            .iter()
            .map(|mv| add_scaled(&current, mv, 1))
            .min_by(|a, b| l1(a).cmp(&l1(b)).then_with(|| a.cmp(b)));
        match best {
            Some(cand) if l1(&cand) < l1(&current) => current = cand,
            _ => return current,
        }
    }
}
