//! q-hit numbers from weighted rook placements and the e-expansion of
//! `csf_q` for abelian Hessenberg functions built from them.
//!
//! Board rows are numbered from bottom to top, so the cell `(row, col)` lies
//! in the Young diagram of `lambda` iff `col <= lambda_{m+1-row}`.

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use itertools::Itertools;
use rayon::prelude::*;

use crate::dyck::{Hess, Partition};
use crate::error::{Error, Result};
use crate::qpoly::{q_factorial, q_int};
use crate::symfunc::{Basis, SymFunc};
use crate::{QPoly, QRat};

/// Largest board enumerated.
pub const MAX_BOARD: usize = 8;

/// `lambda` placed in the top-left corner of the `m x m` board.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoardShape {
    lambda: Partition,
    m: usize,
}

impl BoardShape {
    pub fn new(lambda: Partition, m: usize) -> Result<Self> {
        if lambda.first() > m || lambda.len() > m {
            return Err(Error::Precondition(format!("{lambda} does not fit in a {m}x{m} board")));
        }
        Ok(BoardShape { lambda, m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        col <= self.lambda.part(self.m + 1 - row)
    }
}

/// Non-attacking placement of `m` rooks: the rook of column `c` sits in row
/// `rows[c-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RookPlacement {
    rows: Vec<usize>,
}

impl RookPlacement {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        let m = rows.len();
        let mut seen = vec![false; m + 1];
        for &r in &rows {
            if r == 0 || r > m || seen[r] {
                return Err(Error::Precondition(format!("{rows:?} is not a permutation of 1..={m}")));
            }
            seen[r] = true;
        }
        Ok(RookPlacement { rows })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn row_of(&self, col: usize) -> usize {
        self.rows[col - 1]
    }

    pub fn rooks_inside(&self, shape: &BoardShape) -> usize {
        (1..=self.m()).filter(|&c| shape.contains(self.row_of(c), c)).count()
    }
}

/// Number of cells `e` with no rook on `e`, no rook to the left of `e` in its
/// row, and whose column rook is in `lambda` and below `e` (when `e` is in
/// `lambda`) or is in `lambda` or below `e` (when `e` is outside).
pub fn lambda_weight(sigma: &RookPlacement, shape: &BoardShape) -> Result<usize> {
    let m = shape.m;
    if sigma.m() != m {
        return Err(Error::Precondition(format!("placement has {} rooks on a {m}x{m} board", sigma.m())));
    }
    Ok(weight_raw(&sigma.rows, shape))
}

fn weight_raw(rows: &[usize], shape: &BoardShape) -> usize {
    let m = rows.len();
    let mut col_of_row = vec![0; m + 1];
    for (c, &r) in rows.iter().enumerate() {
        col_of_row[r] = c + 1;
    }
    let mut count = 0;
    for (r, &rook_col) in col_of_row.iter().enumerate().skip(1) {
        // only columns left of the row's rook have no rook to their left
        for c in 1..rook_col {
            let rr = rows[c - 1];
            let rook_in = shape.contains(rr, c);
            let ok = if shape.contains(r, c) { rook_in && rr < r } else { rook_in || rr < r };
            if ok {
                count += 1;
            }
        }
    }
    count
}

fn hit_cache() -> &'static DashMap<BoardShape, Arc<Vec<QPoly>>> {
    static CACHE: OnceLock<DashMap<BoardShape, Arc<Vec<QPoly>>>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// `R_{j,m}(lambda)` for every `0 <= j <= m`.
pub fn hit_polys(m: usize, lambda: &Partition) -> Result<Arc<Vec<QPoly>>> {
    if m > MAX_BOARD {
        return Err(Error::OutOfRange { what: "m", value: m, min: 0, max: MAX_BOARD });
    }
    let shape = BoardShape::new(lambda.clone(), m)?;
    if let Some(v) = hit_cache().get(&shape) {
        return Ok(v.clone());
    }
    let max_wt = m * m;
    let table: Vec<Vec<u64>> = (1..=m.max(1))
        .into_par_iter()
        .map(|first| {
            let mut local = vec![vec![0u64; max_wt + 1]; m + 1];
            if m == 0 {
                local[0][0] = 1;
                return local;
            }
            let rest: Vec<usize> = (1..=m).filter(|&r| r != first).collect();
            for perm in rest.iter().copied().permutations(m - 1) {
                let mut rows = Vec::with_capacity(m);
                rows.push(first);
                rows.extend(perm);
                let inside = (1..=m).filter(|&c| shape.contains(rows[c - 1], c)).count();
                local[inside][weight_raw(&rows, &shape)] += 1;
            }
            local
        })
        .reduce(
            || vec![vec![0u64; max_wt + 1]; m + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    for (u, v) in x.iter_mut().zip(y) {
                        *u += v;
                    }
                }
                a
            },
        );
    let polys: Vec<QPoly> = table
        .into_iter()
        .map(|row| QPoly::from_i64s(&row.into_iter().map(|c| c as i64).collect::<Vec<_>>()))
        .collect();
    let polys = Arc::new(polys);
    Ok(hit_cache().entry(shape).or_insert(polys).clone())
}

/// The q-hit number `R_{j,m}(lambda)`.
pub fn r(j: usize, m: usize, lambda: &Partition) -> Result<QPoly> {
    if j > m {
        return Err(Error::Precondition(format!("need j <= m, got j={j}, m={m}")));
    }
    Ok(hit_polys(m, lambda)?[j].clone())
}

/// The partition with `lambda^t_i = n - h(i)`.
pub fn associated_partition(h: &Hess) -> Partition {
    Partition::new(h.values().iter().map(|&v| h.n() - v).collect()).conjugate()
}

pub fn b(j: usize, h: &Hess) -> Result<QPoly> {
    if !h.is_abelian() {
        return Err(Error::NotAbelian(h.to_string()));
    }
    let n = h.n();
    let lambda = associated_partition(h);
    let (l1, len) = (lambda.first(), lambda.len());
    if 2 * j < n && j <= l1.min(len) && l1.max(len) + j < n {
        let m = n - j - 1;
        return Ok((&q_int(n - 2 * j) * &r(j, m, &lambda)?).shift(j));
    }
    if j <= n && ((l1 == j && len == n - j) || (l1 == n - j && len == j)) {
        return r(j, n - j, &lambda);
    }
    Ok(QPoly::zero())
}

/// `sum_{j <= n/2} j!_q b_j(h) e_{(n-j, j)}`.
pub fn csf_abelian_qhit(h: &Hess) -> Result<SymFunc> {
    let n = h.n();
    let mut f = SymFunc::zero(n, Basis::E);
    for j in 0..=n / 2 {
        let c = &q_factorial(j) * &b(j, h)?;
        f.add_term(Partition::new(vec![n - j, j]), QRat::from_poly(c))?;
    }
    Ok(f)
}

/// `R_{j,m}(lambda) = ([m]_q - [j]_q) R_{j,m-1}(lambda)` under its hypotheses.
pub fn verify_rjm(j: usize, m: usize, lambda: &Partition) -> Result<bool> {
    let (l1, len) = (lambda.first(), lambda.len());
    let hyp = m >= 1 && ((j == len && l1 < m) || (j == l1 && len < m));
    if !hyp || j > m - 1 {
        return Err(Error::Precondition(format!("hypotheses fail for j={j}, m={m}, {lambda}")));
    }
    let lhs = r(j, m, lambda)?;
    let rhs = &(&q_int(m) - &q_int(j)) * &r(j, m - 1, lambda)?;
    Ok(lhs == rhs)
}

/// The corner triple at row index `i` (1-based part index): `mu` lowers
/// `lambda_i` by one and `sigma` raises it by one.
pub fn corner_triple(lambda: &Partition, m: usize, i: usize) -> Result<(Partition, Partition)> {
    let li = lambda.part(i);
    let prev = if i == 1 { usize::MAX } else { lambda.part(i - 1) };
    if i == 0 || !(lambda.part(i + 1) < li && li < prev) || li + 1 > m {
        return Err(Error::Precondition(format!("no admissible corner at i={i} for {lambda} in E_{m}")));
    }
    let mut mu = lambda.parts().to_vec();
    mu[i - 1] -= 1;
    let mut sigma = lambda.parts().to_vec();
    sigma[i - 1] += 1;
    Ok((Partition::new(mu), Partition::new(sigma)))
}

/// Both identities `(1+q) R(lambda) = q R(mu) + R(sigma)` and its transpose.
pub fn verify_rjrel(j: usize, m: usize, lambda: &Partition, i: usize) -> Result<bool> {
    rjrel_with(j, m, lambda, i, false)
}

/// The same pair of identities with the factor `q` on `sigma` instead:
/// `(1+q) R(lambda) = R(mu) + q R(sigma)`. This is the form satisfied by
/// [`lambda_weight`].
pub fn verify_rjrel_swapped(j: usize, m: usize, lambda: &Partition, i: usize) -> Result<bool> {
    rjrel_with(j, m, lambda, i, true)
}

fn rjrel_with(j: usize, m: usize, lambda: &Partition, i: usize, swapped: bool) -> Result<bool> {
    let (mu, sigma) = corner_triple(lambda, m, i)?;
    let one_q = QPoly::from_i64s(&[1, 1]);
    let check = |l: &Partition, u: &Partition, s: &Partition| -> Result<bool> {
        let lhs = &one_q * &r(j, m, l)?;
        let (ru, rs) = (r(j, m, u)?, r(j, m, s)?);
        let rhs = if swapped { &ru + &rs.shift(1) } else { &ru.shift(1) + &rs };
        Ok(lhs == rhs)
    };
    Ok(check(lambda, &mu, &sigma)? && check(&lambda.conjugate(), &mu.conjugate(), &sigma.conjugate())?)
}

/// Every partition whose diagram fits in the `m x m` board.
pub fn partitions_in_box(m: usize) -> Vec<Partition> {
    (0..=m * m)
        .flat_map(Partition::all)
        .filter(|p| p.first() <= m && p.len() <= m)
        .collect()
}
