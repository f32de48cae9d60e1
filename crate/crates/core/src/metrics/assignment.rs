//! Maximum-weight bipartite assignment (Kuhn-Munkres with potentials).

/// Maximum total weight of a matching between rows and columns of a
/// non-negative weight matrix, with the chosen (row, column) pairs.
/// Rows and columns may differ in number; unmatched ones contribute nothing.
pub fn max_weight_assignment(weights: &[Vec<u64>]) -> (u64, Vec<(usize, usize)>) {
    let rows = weights.len();
    let cols = weights.iter().map(Vec::len).max().unwrap_or(0);
    if rows == 0 || cols == 0 {
        return (0, Vec::new());
    }
    let n = rows.max(cols);
    let top = weights.iter().flatten().copied().max().unwrap_or(0) as i64;
    let cost = |i: usize, j: usize| -> i64 {
        let w = weights.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0) as i64;
        top - w
    };

    // 1-based arrays; p[j] is the row assigned to column j.
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut pairs = Vec::new();
    let mut total = 0;
    for j in 1..=n {
        let (i, c) = (p[j] - 1, j - 1);
        if let Some(&w) = weights.get(i).and_then(|r| r.get(c)) {
            if w > 0 {
                total += w;
                pairs.push((i, c));
            }
        }
    }
    pairs.sort();
    (total, pairs)
}
