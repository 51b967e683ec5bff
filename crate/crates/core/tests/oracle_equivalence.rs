//! Propagated enumeration against generate-and-test with no propagation.

use std::collections::BTreeSet;

use loopforge::{enumerate_loops, LoopTable, SearchConfig};

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every reduced Latin square of order `n`: each row `r` is `r` followed by
/// a permutation of the rest, columns checked only once the table is full.
fn reduced_latin_squares(n: usize) -> Vec<Vec<Vec<usize>>> {
    let row_choices: Vec<Vec<Vec<usize>>> = (1..n)
        .map(|r| {
            let rest: Vec<usize> = (0..n).filter(|&v| v != r).collect();
            permutations(&rest)
                .into_iter()
                .map(|p| std::iter::once(r).chain(p).collect())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; n.saturating_sub(1)];
    loop {
        let mut rows = vec![(0..n).collect::<Vec<_>>()];
        rows.extend(pick.iter().enumerate().map(|(i, &j)| row_choices[i][j].clone()));
        let latin = (0..n).all(|c| {
            let col: BTreeSet<usize> = rows.iter().map(|row| row[c]).collect();
            col.len() == n
        });
        if latin {
            out.push(rows);
        }
        // odometer over row choices
        let mut i = 0;
        loop {
            if i == pick.len() {
                return out;
            }
            pick[i] += 1;
            if pick[i] < row_choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

fn mul(rows: &[Vec<usize>], x: usize, y: usize) -> usize {
    rows[x][y]
}

fn commutative(rows: &[Vec<usize>]) -> bool {
    let n = rows.len();
    (0..n).all(|x| (0..n).all(|y| rows[x][y] == rows[y][x]))
}

fn jordan(rows: &[Vec<usize>]) -> bool {
    let n = rows.len();
    commutative(rows)
        && (0..n).all(|x| {
            let x2 = mul(rows, x, x);
            (0..n).all(|y| mul(rows, x2, mul(rows, y, x)) == mul(rows, mul(rows, x2, y), x))
        })
}

/// Least relabeled table over every identity-fixing bijection.
fn brute_canonical(rows: &[Vec<usize>]) -> Vec<usize> {
    let n = rows.len();
    let rest: Vec<usize> = (1..n).collect();
    let mut best: Option<Vec<usize>> = None;
    for p in permutations(&rest) {
        let mut perm = vec![0];
        perm.extend(p);
        let mut inv = vec![0; n];
        for (i, &v) in perm.iter().enumerate() {
            inv[v] = i;
        }
        let cells: Vec<usize> = (0..n * n)
            .map(|k| perm[rows[inv[k / n]][inv[k % n]]])
            .collect();
        if best.as_ref().map_or(true, |b| cells < *b) {
            best = Some(cells);
        }
    }
    best.unwrap()
}

fn classes<'a>(tables: impl Iterator<Item = &'a Vec<Vec<usize>>>) -> BTreeSet<Vec<usize>> {
    tables.map(|t| brute_canonical(t)).collect()
}

fn engine_classes(cfg: &SearchConfig) -> BTreeSet<Vec<usize>> {
    let tables: Vec<Vec<Vec<usize>>> =
        enumerate_loops(cfg).unwrap().tables.iter().map(LoopTable::rows).collect();
    classes(tables.iter())
}

#[test]
fn labeled_loops_match_generate_and_test() {
    for n in 1..=5 {
        let oracle: BTreeSet<Vec<Vec<usize>>> = reduced_latin_squares(n).into_iter().collect();
        let engine: BTreeSet<Vec<Vec<usize>>> = enumerate_loops(&SearchConfig::loops(n))
            .unwrap()
            .tables
            .iter()
            .map(LoopTable::rows)
            .collect();
        assert_eq!(engine, oracle, "order {n}");
    }
}

#[test]
fn iso_classes_match_generate_and_test() {
    for n in 1..=5 {
        let all = reduced_latin_squares(n);
        let mut loops = SearchConfig::loops(n);
        loops.up_to_iso = true;
        assert_eq!(engine_classes(&loops), classes(all.iter()), "loops of order {n}");

        let comm: Vec<_> = all.iter().filter(|t| commutative(t)).cloned().collect();
        let mut cfg = SearchConfig::commutative(n);
        assert_eq!(engine_classes(&cfg), classes(comm.iter()), "commutative order {n}");
        cfg.require_identity_diag_odd = false;
        assert_eq!(engine_classes(&cfg), classes(comm.iter()), "commutative order {n}, no pruning");

        let jor: Vec<_> = all.iter().filter(|t| jordan(t)).cloned().collect();
        assert_eq!(engine_classes(&SearchConfig::jordan(n)), classes(jor.iter()), "Jordan order {n}");
    }
}

#[test]
fn raw_assignment_count_small_orders() {
    // every assignment of the (n−1)² inner cells, validated as a table
    for n in 1..=4usize {
        let inner = (n - 1) * (n - 1);
        let total = n.pow(inner as u32);
        let mut valid = 0;
        for code in 0..total {
            let mut cells = vec![0u8; n * n];
            for i in 0..n {
                cells[i] = i as u8;
                cells[i * n] = i as u8;
            }
            let mut c = code;
            for r in 1..n {
                for col in 1..n {
                    cells[r * n + col] = (c % n) as u8;
                    c /= n;
                }
            }
            if LoopTable::from_cells(n, cells).is_ok() {
                valid += 1;
            }
        }
        let engine = enumerate_loops(&SearchConfig::loops(n)).unwrap().tables.len();
        assert_eq!(engine, valid, "order {n}");
    }
}
