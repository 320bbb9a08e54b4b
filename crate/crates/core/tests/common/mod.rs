//! Oracles shared by the integration tests, written against plain integer
//! arrays rather than the library's linear algebra.
#![allow(dead_code)]

/// Rank of an integer matrix by fraction-free elimination.
pub fn int_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let (a, b) = (rows[rank][c], rows[r][c]);
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x = *x * a - y * b;
                }
                let g = rows[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    rows[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cohomology of the normalized Hochschild cochain complex
/// `C^n = Hom(Ā^{⊗n}, A)` of a unital algebra with basis `0..dim` (`0` the
/// unit) and integer structure constants `mul[a][b][c]` (coefficient of `c`
/// in `a·b`), cut off after `C^length`.
pub fn truncated_hochschild(mul: &[Vec<Vec<i128>>], length: usize) -> Vec<usize> {
    let dim = mul.len();
    let bar = dim - 1;
    let words = |n: usize| -> Vec<Vec<usize>> {
        (0..bar.pow(n as u32)).map(|code| (0..n).map(|i| 1 + code / bar.pow((n - 1 - i) as u32) % bar).collect()).collect()
    };
    // cochain coordinate (word w, output c) ↦ w_index * dim + c
    let delta = |n: usize| -> Vec<Vec<i128>> {
        let (src, tgt) = (words(n), words(n + 1));
        let index = |w: &[usize]| src.iter().position(|v| v == w);
        let mut rows = vec![vec![0i128; src.len() * dim]; tgt.len() * dim];
        for (ti, w) in tgt.iter().enumerate() {
            // φ ↦ a_1 φ(a_2…) + Σ (−1)^i φ(…a_i a_{i+1}…) + (−1)^{n+1} φ(a_1…a_n) a_{n+1}
            for c in 0..dim {
                let row = &mut rows[ti * dim + c];
                let head = index(&w[1..]).unwrap();
                for b in 0..dim {
                    row[head * dim + b] += mul[w[0]][b][c];
                }
                for i in 0..n {
                    for (p, &coef) in mul[w[i]][w[i + 1]].iter().enumerate().skip(1) {
                        if coef != 0 {
                            let mut v = w[..i].to_vec();
                            v.push(p);
                            v.extend_from_slice(&w[i + 2..]);
                            let s = if (i + 1) % 2 == 0 { 1 } else { -1 };
                            row[index(&v).unwrap() * dim + c] += s * coef;
                        }
                    }
                }
                let tail = index(&w[..n]).unwrap();
                let s = if (n + 1) % 2 == 0 { 1 } else { -1 };
                for b in 0..dim {
                    row[tail * dim + b] += s * mul[b][w[n]][c];
                }
            }
        }
        rows
    };
    let ranks: Vec<usize> = (0..length).map(|n| int_rank(delta(n))).collect();
    (0..=length)
        .map(|n| {
            let dim_n = words(n).len() * dim;
            let out = if n < length { ranks[n] } else { 0 };
            let inc = if n > 0 { ranks[n - 1] } else { 0 };
            dim_n - out - inc
        })
        .collect()
}

/// `ℚ[t]/(t²)` on the basis `1, t`.
pub fn dual_numbers_table() -> Vec<Vec<Vec<i128>>> {
    let mut m = vec![vec![vec![0; 2]; 2]; 2];
    m[0][0][0] = 1;
    m[0][1][1] = 1;
    m[1][0][1] = 1;
    m
}
