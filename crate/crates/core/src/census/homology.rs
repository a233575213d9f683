//! Integer Smith normal form and first homology of a gluing.

use super::CensusError;

/// Invariant factors (the nonzero diagonal of the Smith normal form) of an
/// integer matrix, in divisibility order.
#[allow(clippy::needless_range_loop)]
pub fn smith_normal_form(matrix: &[Vec<i64>]) -> Result<Vec<i64>, CensusError> {
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != cols) {
        return Err(CensusError::Structural("ragged matrix".into()));
    }
    let overflow = || CensusError::Structural("integer overflow in Smith normal form".into());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut pivot = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && pivot.is_none_or(|(_, _, m)| x.abs() < m) {
                    pivot = Some((i, j, x.abs()));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] = a[i][j]
                            .checked_sub(q.checked_mul(a[t][j]).ok_or_else(overflow)?)
                            .ok_or_else(overflow)?;
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = row[j]
                            .checked_sub(q.checked_mul(row[t]).ok_or_else(overflow)?)
                            .ok_or_else(overflow)?;
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] = a[t][j].checked_add(a[i][j]).ok_or_else(overflow)?;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t, a[t][t].abs());
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < best.2 {
                    best = (i, t, a[i][t].abs());
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < best.2 {
                    best = (t, j, a[t][j].abs());
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(i64::try_from(a[t][t].abs()).map_err(|_| overflow())?);
        t += 1;
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_example() {
        assert_eq!(
            smith_normal_form(&[vec![2, 0], vec![0, 3]]).unwrap(),
            vec![1, 6]
        );
    }

    #[test]
    fn zero_and_empty() {
        assert!(smith_normal_form(&[vec![0, 0]]).unwrap().is_empty());
        assert!(smith_normal_form(&[]).unwrap().is_empty());
    }

    #[test]
    fn known_forms() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(smith_normal_form(&m).unwrap(), vec![2, 6, 12]);
        let m = vec![vec![4, 6], vec![6, 9], vec![2, 3]];
        assert_eq!(smith_normal_form(&m).unwrap(), vec![1]);
    }
}
