//! Partitions, reverse standard Young tableaux (RSYT) and the edge profile of
//! the diagram left after removing the cell holding entry 1.
//!
//! Rows and columns are 1-based throughout, as are tableau entries.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("malformed partition {0:?}: parts must be positive and weakly decreasing")]
    BadPartition(String),
    #[error("malformed tableau {0:?}")]
    BadTableau(String),
    #[error("malformed cell {0:?}: expected \"row,col\"")]
    BadCell(String),
    #[error("no RSYT of shape {shape} has content vector {contents:?}")]
    NotFound { shape: String, contents: Vec<i64> },
    #[error("cell ({row},{col}) is not a removable corner of {shape}")]
    NotACorner { shape: String, row: usize, col: usize },
}

/// A cell of a Ferrers diagram; serialized as `"row,col"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.row, self.col)
    }
}

impl FromStr for Cell {
    type Err = TableauError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TableauError::BadCell(s.to_string());
        let (r, c) = s.split_once(',').ok_or_else(bad)?;
        let row: usize = r.trim().parse().map_err(|_| bad())?;
        let col: usize = c.trim().parse().map_err(|_| bad())?;
        if row == 0 || col == 0 {
            return Err(bad());
        }
        Ok(Cell { row, col })
    }
}

/// A partition of `N`: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, TableauError> {
        let ok = !parts.is_empty()
            && parts.iter().all(|&p| p > 0)
            && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(TableauError::BadPartition(format!("{parts:?}")))
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `N = |tau|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows `l(tau)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i` (1-based), zero beyond the last row.
    pub fn row_len(&self, i: usize) -> usize {
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// Number of rows of length at least `j`.
    pub fn col_len(&self, j: usize) -> usize {
        self.parts.iter().take_while(|&&p| p >= j).count()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row)
    }

    pub fn hook(&self, cell: Cell) -> usize {
        self.row_len(cell.row) - cell.col + self.col_len(cell.col) - cell.row + 1
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Cell::new(i + 1, j)))
    }

    /// Longest hook length `h_tau` (the hook of cell (1,1)).
    pub fn longest_hook(&self) -> usize {
        self.hook(Cell::new(1, 1))
    }

    /// Corners whose removal leaves a partition.
    pub fn removable_corners(&self) -> Vec<Cell> {
        (1..=self.len())
            .filter(|&i| self.row_len(i) > self.row_len(i + 1))
            .map(|i| Cell::new(i, self.row_len(i)))
            .collect()
    }

    /// Cells whose addition yields a partition, top row first.
    pub fn addable_cells(&self) -> Vec<Cell> {
        addable_cells_of(&self.parts)
    }

    pub fn with_cell(&self, cell: Cell) -> Partition {
        let mut parts = self.parts.clone();
        if cell.row > parts.len() {
            parts.push(1);
        } else {
            parts[cell.row - 1] += 1;
        }
        Partition { parts }
    }

    /// Dimension of the irreducible module via the hook-length formula.
    pub fn hook_dimension(&self) -> u128 {
        let n = self.size() as u128;
        let mut num: u128 = (1..=n).product();
        let mut hooks: Vec<u128> = self.cells().map(|c| self.hook(c) as u128).collect();
        hooks.sort_unstable();
        // cancel as we go to stay within u128 for moderate N
        for h in hooks {
            num /= h;
        }
        num
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            for p in (1..=n.min(max)).rev() {
                prefix.push(p);
                rec(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

fn addable_cells_of(parts: &[usize]) -> Vec<Cell> {
    let mut cells = Vec::new();
    let len = parts.iter().take_while(|&&p| p > 0).count();
    for i in 0..len {
        if i == 0 || parts[i] < parts[i - 1] {
            cells.push(Cell::new(i + 1, parts[i] + 1));
        }
    }
    cells.push(Cell::new(len + 1, 1));
    cells
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = TableauError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Result<Vec<usize>, _> = s.split(',').map(|p| p.trim().parse()).collect();
        parts
            .map_err(|_| TableauError::BadPartition(s.to_string()))
            .and_then(Partition::new)
            .map_err(|_| TableauError::BadPartition(s.to_string()))
    }
}

/// A reverse standard Young tableau: entries `1..=N` strictly decreasing
/// along rows and down columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    /// `cells[i - 1]` holds entry `i`.
    cells: Vec<Cell>,
}

impl Tableau {
    /// Builds from rows of entries, validating the RSYT conditions.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, TableauError> {
        let bad = || TableauError::BadTableau(format!("{rows:?}"));
        let shape = Partition::new(rows.iter().map(Vec::len).collect()).map_err(|_| bad())?;
        let n = shape.size();
        let mut cells = vec![None; n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e == 0 || e > n || cells[e - 1].is_some() {
                    return Err(bad());
                }
                cells[e - 1] = Some(Cell::new(i + 1, j + 1));
                if j > 0 && row[j - 1] <= e {
                    return Err(bad());
                }
                if i > 0 && rows[i - 1][j] <= e {
                    return Err(bad());
                }
            }
        }
        let cells = cells.into_iter().collect::<Option<Vec<_>>>().ok_or_else(bad)?;
        Ok(Tableau { shape, cells })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// Cell holding entry `i` (1-based).
    pub fn cell_of(&self, i: usize) -> Cell {
        self.cells[i - 1]
    }

    /// `c(i, S) = col(i, S) - row(i, S)`.
    pub fn content(&self, i: usize) -> i64 {
        self.cells[i - 1].content()
    }

    pub fn content_vector(&self) -> Vec<i64> {
        self.cells.iter().map(Cell::content).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self.shape.parts.iter().map(|&p| vec![0; p]).collect();
        for (e, c) in self.cells.iter().enumerate() {
            rows[c.row - 1][c.col - 1] = e + 1;
        }
        rows
    }

    /// Tableau obtained by exchanging entries `i` and `i + 1`; `None` if the
    /// result violates the RSYT conditions.
    pub fn swapped(&self, i: usize) -> Option<Tableau> {
        let (a, b) = (self.cells[i - 1], self.cells[i]);
        if a.row == b.row || a.col == b.col {
            return None;
        }
        let mut cells = self.cells.clone();
        cells.swap(i - 1, i);
        Some(Tableau {
            shape: self.shape.clone(),
            cells,
        })
    }

    /// Removes the cell holding entry 1, giving `tau_hat` with one entry per
    /// row of `tau` (a trailing zero when the last row empties).
    pub fn remove_entry_one(&self) -> Vec<usize> {
        tau_hat(&self.shape, self.cell_of(1))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        f.write_str(&rows.join(";"))
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Tableau {
    type Err = TableauError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TableauError::BadTableau(s.to_string());
        let rows: Vec<Vec<usize>> = s
            .split(';')
            .map(|r| r.split(',').map(|e| e.trim().parse::<usize>()).collect())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        Tableau::from_rows(&rows).map_err(|_| bad())
    }
}

/// All RSYTs of the shape, in decreasing lexicographic order of content vectors.
pub fn enumerate_rsyt(shape: &Partition) -> Vec<Tableau> {
    // Place N, N-1, ..., 1 at successive addable corners of the filled region.
    fn rec(
        shape: &Partition,
        filled: &mut Vec<usize>,
        entry: usize,
        cells: &mut Vec<Cell>,
        out: &mut Vec<Tableau>,
    ) {
        if entry == 0 {
            out.push(Tableau {
                shape: shape.clone(),
                cells: cells.clone(),
            });
            return;
        }
        for cell in addable_cells_of(filled) {
            if !shape.contains(cell) {
                continue;
            }
            if cell.row > filled.len() {
                filled.push(0);
            }
            filled[cell.row - 1] += 1;
            cells[entry - 1] = cell;
            rec(shape, filled, entry - 1, cells, out);
            filled[cell.row - 1] -= 1;
            if filled.last() == Some(&0) {
                filled.pop();
            }
        }
    }
    let n = shape.size();
    let mut out = Vec::new();
    rec(
        shape,
        &mut Vec::new(),
        n,
        &mut vec![Cell::new(0, 0); n],
        &mut out,
    );
    out.sort_by_key(|t| std::cmp::Reverse(t.content_vector()));
    out
}

/// The unique RSYT of `shape` with the given content vector.
pub fn tableau_from_contents(shape: &Partition, contents: &[i64]) -> Result<Tableau, TableauError> {
    let not_found = || TableauError::NotFound {
        shape: shape.to_string(),
        contents: contents.to_vec(),
    };
    let n = shape.size();
    if contents.len() != n {
        return Err(not_found());
    }
    let mut filled: Vec<usize> = Vec::new();
    let mut cells = vec![Cell::new(0, 0); n];
    for entry in (1..=n).rev() {
        let cell = addable_cells_of(&filled)
            .into_iter()
            .find(|c| c.content() == contents[entry - 1])
            .filter(|&c| shape.contains(c))
            .ok_or_else(not_found)?;
        if cell.row > filled.len() {
            filled.push(0);
        }
        filled[cell.row - 1] += 1;
        cells[entry - 1] = cell;
    }
    Ok(Tableau {
        shape: shape.clone(),
        cells,
    })
}

/// `tau` with `cell` removed, keeping one entry per row of `tau`.
pub fn tau_hat(shape: &Partition, cell: Cell) -> Vec<usize> {
    let mut parts = shape.parts.clone();
    parts[cell.row - 1] -= 1;
    parts
}

/// Validates that `cell` is a removable corner of `shape`.
pub fn check_corner(shape: &Partition, cell: Cell) -> Result<(), TableauError> {
    if shape.removable_corners().contains(&cell) {
        Ok(())
    } else {
        Err(TableauError::NotACorner {
            shape: shape.to_string(),
            row: cell.row,
            col: cell.col,
        })
    }
}

/// Edge profile of `tau_hat`.
///
/// `edge_sequence` lists the first row of each run of equal nonzero parts,
/// followed by one past the last nonzero row; `addable_contents` are the
/// contents of the cells where a box can be attached, in the same order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeData {
    pub tau_hat: Vec<usize>,
    pub ell_tau: usize,
    pub edge_sequence: Vec<usize>,
    pub addable_contents: Vec<i64>,
}

impl EdgeData {
    /// Row breaks over all `l(tau)` rows, ending at `l(tau) + 1`. Differs from
    /// `edge_sequence` only when `tau_hat` has a trailing zero.
    pub fn row_sequence(&self) -> Vec<usize> {
        let mut seq = self.edge_sequence.clone();
        if seq.last() != Some(&(self.ell_tau + 1)) {
            seq.push(self.ell_tau + 1);
        }
        seq
    }

    /// Cells matching `addable_contents`.
    pub fn addable_cells(&self) -> Vec<Cell> {
        addable_cells_of(&self.tau_hat)
    }

    pub fn cell_with_content(&self, z: i64) -> Option<Cell> {
        self.addable_cells().into_iter().find(|c| c.content() == z)
    }
}

pub fn edge_profile(tau_hat: &[usize], ell_tau: usize) -> EdgeData {
    let nonzero = tau_hat.iter().take_while(|&&p| p > 0).count();
    let mut seq = Vec::new();
    for i in 1..=nonzero {
        if i == 1 || tau_hat[i - 1] < tau_hat[i - 2] {
            seq.push(i);
        }
    }
    seq.push(nonzero + 1);
    let mut z: Vec<i64> = seq[..seq.len() - 1]
        .iter()
        .map(|&i| tau_hat[i - 1] as i64 + 1 - i as i64)
        .collect();
    z.push(-(nonzero as i64));
    EdgeData {
        tau_hat: tau_hat.to_vec(),
        ell_tau,
        edge_sequence: seq,
        addable_contents: z,
    }
}
