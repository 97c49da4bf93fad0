//! Smith normal form over the integers.

/// Returns `(d, u, v)` with `u * m * v = diag(d)` and `u`, `v` unimodular.
/// `m` is square.
pub fn smith(m: &[Vec<i64>]) -> (Vec<i64>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut u = identity(n);
    let mut v = identity(n);
    for t in 0..n {
        loop {
            // pivot: smallest nonzero absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in 0..n {
                        a[i][j] -= q * a[t][j];
                        u[i][j] -= q * u[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = a[t][j] / p;
                if q != 0 {
                    for i in 0..n {
                        a[i][j] -= q * a[i][t];
                        v[i][j] -= q * v[i][t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block
            let mut bad = None;
            'outer: for i in t + 1..n {
                for j in t + 1..n {
                    if a[i][j] % p != 0 {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in 0..n {
                        a[t][j] += a[i][j];
                        u[t][j] += u[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..n {
                a[t][j] = -a[t][j];
                u[t][j] = -u[t][j];
            }
        }
    }
    let d = (0..n).map(|i| a[i][i]).collect();
    (d, u, v)
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Adjugate matrix, so that `m * adj(m) = det(m) * I`.
pub fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = s * det(&minor);
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_recomposes() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let (d, u, v) = smith(&m);
        let p = mat_mul(&mat_mul(&u, &m), &v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p[i][j], if i == j { d[i] } else { 0 });
            }
        }
        assert_eq!(d, vec![2, 6, 12]);
        assert_eq!(det(&u).abs(), 1);
        assert_eq!(det(&v).abs(), 1);
    }

    #[test]
    fn adjugate_inverts() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        let a = adjugate(&m);
        let p = mat_mul(&m, &a);
        assert_eq!(det(&m), 4);
        assert_eq!(p, vec![vec![4, 0, 0], vec![0, 4, 0], vec![0, 0, 4]]);
    }
}

/// Whether the integer vectors (all of length `m`) generate `Z^m`.
pub fn generates_lattice(vectors: &[Vec<i64>], m: usize) -> bool {
    let mut rows: Vec<Vec<i64>> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let mut r = 0;
    for c in 0..m {
        // gcd-reduce column c among rows r..
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            for &i in &nz {
                if i != p {
                    let q = rows[i][c] / rows[p][c];
                    let prow = rows[p].clone();
                    for (x, y) in rows[i].iter_mut().zip(&prow) {
                        *x -= q * y;
                    }
                }
            }
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { return false };
        if rows[p][c].abs() != 1 {
            return false;
        }
        rows.swap(r, p);
        r += 1;
    }
    true
}

#[cfg(test)]
mod lattice_tests {
    use super::*;

    #[test]
    fn lattice_generation() {
        assert!(generates_lattice(&[vec![2, 0], vec![3, 1], vec![0, 1]], 2));
        assert!(!generates_lattice(&[vec![2, 0], vec![0, 1]], 2));
        assert!(!generates_lattice(&[vec![1, 1]], 2));
        assert!(generates_lattice(&[], 0));
    }
}
