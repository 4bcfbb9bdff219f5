//! Friedman rank test over per-dataset error rates, Nemenyi critical
//! distance, and a critical-distance diagram emitter (SVG plus a monospace
//! text rendering, both deterministic byte-for-byte).

use crate::error::{Error, Result};

/// Per-dataset ranks of k methods over N datasets, with column averages.
///
/// Every rank row is a tie-averaged permutation of 1..k (row sum k(k+1)/2).
#[derive(Debug, Clone, PartialEq)]
pub struct RankMatrix {
    pub methods: Vec<String>,
    pub datasets: Vec<String>,
    pub errors: Vec<Vec<f64>>,
    pub ranks: Vec<Vec<f64>>,
    pub avg_ranks: Vec<f64>,
}

/// Ascending ranks for one row, ties averaged.
fn rank_row(row: &[f64]) -> Vec<f64> {
    let k = row.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| row[a].partial_cmp(&row[b]).expect("finite entries"));
    let mut ranks = vec![0.0; k];
    let mut i = 0;
    while i < k {
        let mut j = i;
        while j + 1 < k && row[order[j + 1]] == row[order[i]] {
            j += 1;
        }
        let avg = (i + j + 2) as f64 / 2.0;
        for t in i..=j {
            ranks[order[t]] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Rank every dataset row (lower error is better) and average per method.
pub fn rank_rows(
    methods: Vec<String>,
    datasets: Vec<String>,
    errors: Vec<Vec<f64>>,
) -> Result<RankMatrix> {
    let k = methods.len();
    let n = datasets.len();
    if k < 2 {
        return Err(Error::RankMatrixTooSmall {
            what: "methods",
            required: 2,
            got: k,
        });
    }
    if n < 2 || errors.len() != n {
        return Err(Error::RankMatrixTooSmall {
            what: "datasets",
            required: 2,
            got: errors.len().min(n),
        });
    }
    for (row_idx, row) in errors.iter().enumerate() {
        if row.len() != k {
            return Err(Error::NonuniformLength {
                line: row_idx + 1,
                expected: k,
                got: row.len(),
            });
        }
        if let Some(col) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteErrorRate {
                row: row_idx,
                column: col,
            });
        }
    }

    let ranks: Vec<Vec<f64>> = errors.iter().map(|r| rank_row(r)).collect();
    let avg_ranks: Vec<f64> = (0..k)
        .map(|j| ranks.iter().map(|r| r[j]).sum::<f64>() / n as f64)
        .collect();
    Ok(RankMatrix {
        methods,
        datasets,
        errors,
        ranks,
        avg_ranks,
    })
}

/// The Friedman chi-square statistic and, when defined, its F-ratio
/// correction. The F-ratio is undefined (None) when N(k-1) equals the
/// chi-square, which happens at perfect agreement across datasets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FriedmanStats {
    pub chi_square: f64,
    pub f_statistic: Option<f64>,
}

pub fn friedman_statistic(rm: &RankMatrix) -> FriedmanStats {
    let k = rm.methods.len() as f64;
    let n = rm.datasets.len() as f64;
    let sum_sq: f64 = rm.avg_ranks.iter().map(|r| r * r).sum();
    let chi_square = 12.0 * n / (k * (k + 1.0)) * (sum_sq - k * (k + 1.0) * (k + 1.0) / 4.0);
    let denom = n * (k - 1.0) - chi_square;
    let f_statistic = if denom.abs() < 1e-12 {
        None
    } else {
        Some((n - 1.0) * chi_square / denom)
    };
    FriedmanStats {
        chi_square,
        f_statistic,
    }
}

/// Significance level for the Nemenyi critical distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alpha {
    FivePercent,
    TenPercent,
}

// Studentized-range-derived critical values q_alpha(k) for k = 2..=10.
const Q_05: [f64; 9] = [1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164];
const Q_10: [f64; 9] = [1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920];

/// Nemenyi critical distance CD = q_alpha(k) * sqrt(k(k+1) / (6N)).
pub fn nemenyi_cd(k: usize, n_datasets: usize, alpha: Alpha) -> Result<f64> {
    if !(2..=10).contains(&k) {
        return Err(Error::UnsupportedMethodCount { k });
    }
    if n_datasets < 2 {
        return Err(Error::RankMatrixTooSmall {
            what: "datasets",
            required: 2,
            got: n_datasets,
        });
    }
    let q = match alpha {
        Alpha::FivePercent => Q_05[k - 2],
        Alpha::TenPercent => Q_10[k - 2],
    };
    Ok(q * ((k * (k + 1)) as f64 / (6.0 * n_datasets as f64)).sqrt())
}

/// A rendered critical-distance diagram plus the groupings as data: each
/// group is a set of method indices (into `RankMatrix::methods`) whose
/// average ranks all lie within one critical distance.
#[derive(Debug, Clone, PartialEq)]
pub struct CdDiagram {
    pub svg: String,
    pub text: String,
    pub groups: Vec<Vec<usize>>,
}

/// Maximal runs of rank-sorted methods whose extreme rank difference is
/// below the critical distance.
fn connected_groups(sorted: &[(usize, f64)], cd: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for i in 0..sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1].1 - sorted[i].1 < cd {
            j += 1;
        }
        match groups.last() {
            Some(&(_, last_j)) if j <= last_j => {} // nested in the previous run
            _ => groups.push((i, j)),
        }
    }
    groups
        .into_iter()
        .map(|(i, j)| sorted[i..=j].iter().map(|(m, _)| *m).collect())
        .collect()
}

pub fn emit_cd_diagram(rm: &RankMatrix, cd: f64, non_metric: &[bool]) -> Result<CdDiagram> {
    let k = rm.methods.len();
    if non_metric.len() != k {
        return Err(Error::InvalidParameter(format!(
            "expected {k} non-metric flags, got {}",
            non_metric.len()
        )));
    }
    if !(cd.is_finite() && cd >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "critical distance must be a non-negative real, got {cd}"
        )));
    }

    let mut sorted: Vec<(usize, f64)> = rm.avg_ranks.iter().cloned().enumerate().collect();
    sorted.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
    let groups = connected_groups(&sorted, cd);

    let display = |m: usize| {
        if non_metric[m] {
            format!("{}*", rm.methods[m])
        } else {
            rm.methods[m].clone()
        }
    };

    // Text rendering: an axis over [1, k], one bar row per multi-member
    // group, one marker row per method in rank order.
    let width = 60usize;
    let col = |rank: f64| (((rank - 1.0) / (k as f64 - 1.0)) * width as f64).round() as usize;
    let mut text = String::new();
    text.push_str(&format!("CD = {cd:.4}\n"));
    let mut axis_labels = vec![b' '; width + 1];
    let mut axis = vec![b'-'; width + 1];
    for r in 1..=k {
        let c = col(r as f64);
        axis[c] = b'+';
        let label = r.to_string();
        for (o, ch) in label.bytes().enumerate() {
            if c + o < axis_labels.len() {
                axis_labels[c + o] = ch;
            }
        }
    }
    text.push_str(&format!("{}\n", String::from_utf8(axis_labels).unwrap()));
    text.push_str(&format!("{}\n", String::from_utf8(axis).unwrap()));
    for group in groups.iter().filter(|g| g.len() > 1) {
        let lo = col(rm.avg_ranks[group[0]]);
        let hi = col(rm.avg_ranks[*group.last().unwrap()]);
        let mut bar = vec![b' '; width + 1];
        for slot in bar.iter_mut().take(hi + 1).skip(lo) {
            *slot = b'=';
        }
        text.push_str(&format!("{}\n", String::from_utf8(bar).unwrap()));
    }
    for &(m, rank) in &sorted {
        let mut row = vec![b' '; col(rank) + 1];
        row[col(rank)] = b'|';
        text.push_str(&format!(
            "{} {} ({:.4})\n",
            String::from_utf8(row).unwrap(),
            display(m),
            rank
        ));
    }
    text.push_str("groups:\n");
    for group in &groups {
        let names: Vec<String> = group.iter().map(|&m| display(m)).collect();
        text.push_str(&format!("  {{{}}}\n", names.join(", ")));
    }

    // SVG rendering of the same layout.
    let svg_w = 640.0;
    let margin = 50.0;
    let x = |rank: f64| margin + (rank - 1.0) / (k as f64 - 1.0) * (svg_w - 2.0 * margin);
    let axis_y = 40.0;
    let bar_rows: Vec<&Vec<usize>> = groups.iter().filter(|g| g.len() > 1).collect();
    let labels_y0 = axis_y + 14.0 + bar_rows.len() as f64 * 8.0 + 12.0;
    let svg_h = labels_y0 + k as f64 * 16.0 + 20.0;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{svg_w:.0}\" height=\"{svg_h:.0}\" \
         viewBox=\"0 0 {svg_w:.0} {svg_h:.0}\" font-family=\"monospace\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{margin:.1}\" y=\"16\">CD = {cd:.4}</text>\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{:.1}\" y1=\"{axis_y:.1}\" x2=\"{:.1}\" y2=\"{axis_y:.1}\" stroke=\"black\"/>\n",
        x(1.0),
        x(k as f64)
    ));
    for r in 1..=k {
        let xp = x(r as f64);
        svg.push_str(&format!(
            "  <line x1=\"{xp:.1}\" y1=\"{:.1}\" x2=\"{xp:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            axis_y - 4.0,
            axis_y + 4.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{xp:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{r}</text>\n",
            axis_y - 8.0
        ));
    }
    for (row, group) in bar_rows.iter().enumerate() {
        let y = axis_y + 14.0 + row as f64 * 8.0;
        svg.push_str(&format!(
            "  <line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"black\" stroke-width=\"4\"/>\n",
            x(rm.avg_ranks[group[0]]),
            x(rm.avg_ranks[*group.last().unwrap()])
        ));
    }
    for (row, &(m, rank)) in sorted.iter().enumerate() {
        let y = labels_y0 + row as f64 * 16.0;
        svg.push_str(&format!(
            "  <line x1=\"{:.1}\" y1=\"{axis_y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"gray\"/>\n",
            x(rank),
            x(rank)
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\">{} ({:.4})</text>\n",
            x(rank) + 4.0,
            y + 4.0,
            display(m),
            rank
        ));
    }
    svg.push_str("</svg>\n");

    Ok(CdDiagram { svg, text, groups })
}
