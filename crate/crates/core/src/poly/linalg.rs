use super::field::Coeff;

/// Rank of a dense matrix over a field, by Gaussian elimination.
pub fn rank(rows: &[Vec<Coeff>]) -> usize {
    let mut m: Vec<Vec<Coeff>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in &mut m[r][c..] {
            *x = &*x * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::BaseField;

    #[test]
    fn ranks() {
        let q = BaseField::Rational;
        let m = |v: &[&[i64]]| -> Vec<Vec<Coeff>> {
            v.iter().map(|r| r.iter().map(|&c| q.from_i64(c)).collect()).collect()
        };
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(&m(&[&[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
        let f = BaseField::prime(2).unwrap();
        let m2: Vec<Vec<Coeff>> = vec![vec![f.from_i64(1), f.from_i64(1)], vec![f.from_i64(1), f.from_i64(3)]];
        assert_eq!(rank(&m2), 1);
    }
}
