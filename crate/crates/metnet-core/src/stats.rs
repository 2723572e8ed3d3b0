//! Shared statistical kernels: Pearson correlation, Spearman rank
//! correlation, equal-frequency discretization, and mutual information.

/// Pearson correlation coefficient. `None` when either column has zero
/// variance or fewer than two samples.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
        sxy += (a - mx) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Ranks with average ties, 0-based.
fn ranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap());
    let mut r = vec![0.0; x.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && x[idx[j + 1]] == x[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

/// Spearman rank correlation (Pearson on average-tie ranks).
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    pearson(&ranks(x), &ranks(y))
}

/// Population mean and standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let m = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / n;
    (m, var.sqrt())
}

/// Sample standard deviation (n−1 denominator); 0 for n < 2.
pub fn sample_std(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = values.iter().sum::<f64>() / n as f64;
    (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1) as f64).sqrt()
}

/// Equal-frequency discretization into `bins` cells: sample i goes to cell
/// `rank(i) * bins / n`. Ties are broken by original index, so identical
/// columns map to identical partitions.
pub fn equal_frequency_bins(x: &[f64], bins: usize) -> Vec<usize> {
    assert!(bins >= 1);
    let n = x.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap().then(a.cmp(&b)));
    let mut cell = vec![0usize; n];
    for (rank, &i) in idx.iter().enumerate() {
        cell[i] = rank * bins / n;
    }
    cell
}

/// Mutual information (natural log) between two discrete labelings over the
/// same samples.
pub fn mutual_information_discrete(u: &[usize], v: &[usize]) -> f64 {
    assert_eq!(u.len(), v.len());
    let n = u.len();
    if n == 0 {
        return 0.0;
    }
    let ku = u.iter().max().map_or(0, |&m| m + 1);
    let kv = v.iter().max().map_or(0, |&m| m + 1);
    let mut joint = vec![0u64; ku * kv];
    let mut cu = vec![0u64; ku];
    let mut cv = vec![0u64; kv];
    for (&a, &b) in u.iter().zip(v) {
        joint[a * kv + b] += 1;
        cu[a] += 1;
        cv[b] += 1;
    }
    let nf = n as f64;
    let mut mi = 0.0;
    for a in 0..ku {
        for b in 0..kv {
            let c = joint[a * kv + b];
            if c > 0 {
                let c = c as f64;
                mi += c / nf * ((c * nf) / (cu[a] as f64 * cv[b] as f64)).ln();
            }
        }
    }
    mi.max(0.0)
}

/// MI of two continuous columns after equal-frequency binning.
pub fn mutual_information_binned(x: &[f64], y: &[f64], bins: usize) -> f64 {
    mutual_information_discrete(&equal_frequency_bins(x, bins), &equal_frequency_bins(y, bins))
}
