//! The printed table of inclusions and its internal consistency rules.

use std::collections::BTreeMap;

use polystrata::nerve::QTable;

pub const PRINTED: &str = include_str!("../data/inclusions.tex");

pub fn sub1(row: &[(i64, i64)], n: i64) -> Vec<(i64, i64)> {
    row.iter()
        .map(|&(a, b)| ((a - 1).rem_euclid(n), (b - 1).rem_euclid(n)))
        .collect()
}

pub fn reduce(row: &[(i64, i64)], n: i64) -> Vec<(i64, i64)> {
    row.iter()
        .map(|&(a, b)| (a.rem_euclid(n), b.rem_euclid(n)))
        .collect()
}

pub type Row = Vec<(i64, i64)>;

/// Cells of the printed table: `cells[d]` lists `(top, bottom)` rows from
/// the top of column `d`.
pub fn parse_table(tex: &str) -> BTreeMap<usize, Vec<(Row, Row)>> {
    const BEGIN: &str = "\\begin{smallmatrix}";
    const END: &str = "\\end{smallmatrix}";
    let mut out: BTreeMap<usize, Vec<(Row, Row)>> = BTreeMap::new();
    let mut col = 0;
    let mut rest = tex;
    loop {
        let next_cell = rest.find(BEGIN);
        let next_amp = rest.find('&');
        let next_row = rest.find("\\\\");
        let first = [next_cell, next_amp, next_row].into_iter().flatten().min();
        let Some(at) = first else { break };
        if Some(at) == next_cell {
            let body_start = at + BEGIN.len();
            let len = rest[body_start..].find(END).unwrap();
            let body = &rest[body_start..body_start + len];
            let rows: Vec<Row> = body
                .split("\\\\")
                .map(parse_pairs)
                .filter(|r| !r.is_empty())
                .collect();
            assert_eq!(rows.len(), 2, "{body}");
            out.entry(col + 2)
                .or_default()
                .push((rows[0].clone(), rows[1].clone()));
            rest = &rest[body_start + len + END.len()..];
        } else if Some(at) == next_amp {
            col += 1;
            rest = &rest[at + 1..];
        } else {
            col = 0;
            rest = &rest[at + 2..];
        }
    }
    out
}

fn parse_pairs(s: &str) -> Row {
    s.split('&')
        .filter_map(|e| {
            let nums: Vec<i64> = e
                .split(|c: char| !c.is_ascii_digit())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().unwrap())
                .collect();
            match nums.as_slice() {
                [] => None,
                [a, b] => Some((*a, *b)),
                _ => panic!("entry {e:?}"),
            }
        })
        .collect()
}

/// Whether a printed cell agrees with its own neighbours: entries step by
/// `(+2, -2)`, the bottom row is the top minus one, and the next cell starts
/// with this bottom row.
pub fn self_consistent(col: &[(Row, Row)], i: usize, n: i64) -> bool {
    let steps = |r: &Row| {
        r.windows(2)
            .all(|w| reduce(&[(w[0].0 + 2, w[0].1 - 2)], n) == reduce(&[w[1]], n))
    };
    let (top, bottom) = &col[i];
    let next_ok = col
        .get(i + 1)
        .is_none_or(|(t, _)| reduce(t, n) == reduce(bottom, n));
    let prev_ok = i == 0 || reduce(&col[i - 1].1, n) == reduce(top, n);
    steps(top) && steps(bottom) && sub1(top, n) == reduce(bottom, n) && next_ok && prev_ok
}

/// A cell entry where print and computation differ:
/// `(d, row, side, entry, printed, computed)`.
pub type Diff = (usize, usize, &'static str, usize, (i64, i64), (i64, i64));

pub const MISPRINTS: [Diff; 5] = [
    (5, 6, "top", 1, (13, 5), (13, 3)),
    (5, 7, "top", 1, (12, 4), (12, 2)),
    (6, 0, "top", 2, (23, 13), (23, 9)),
    (6, 0, "bottom", 2, (22, 12), (22, 8)),
    (6, 1, "top", 2, (22, 12), (22, 8)),
];

/// Entry-by-entry comparison of `ours` with the print. Errors if the shapes
/// differ or if a differing cell is consistent within the print.
pub fn compare(ours: &QTable) -> Result<Vec<Diff>, String> {
    let printed = parse_table(PRINTED);
    if printed.keys().copied().collect::<Vec<_>>() != vec![3, 4, 5, 6, 7] {
        return Err("printed columns are not 3..=7".into());
    }
    let mut diffs = Vec::new();
    for (&d, col) in &printed {
        let n = 4 * d as i64;
        let mine = ours.columns.get(&d).ok_or(format!("no column {d}"))?;
        if col.len() != 2 * d || mine.len() != 2 * d {
            return Err(format!(
                "column {d} has {} printed and {} computed cells",
                col.len(),
                mine.len()
            ));
        }
        for (i, (top, bottom)) in col.iter().enumerate() {
            let (t, b) = mine[i].normalized(d);
            for (side, theirs, ours) in [("top", top, &t), ("bottom", bottom, &b)] {
                if theirs.len() != d - 2 || ours.len() != d - 2 {
                    return Err(format!("d={d} row {i} {side}: wrong length"));
                }
                for (j, (x, y)) in theirs.iter().zip(ours.iter()).enumerate() {
                    if x != y {
                        diffs.push((d, i, side, j, *x, *y));
                    }
                }
            }
            if (&t, &b) != (top, bottom) && self_consistent(col, i, n) {
                return Err(format!("d={d} row {i} differs but is consistent in print"));
            }
        }
    }
    Ok(diffs)
}
