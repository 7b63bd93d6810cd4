//! Young diagrams, one-line tableaux `[I:J]`, double tableaux and
//! semistandard tableaux.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Young diagram given by its row lengths `r_1 >= r_2 >= ... >= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Shape(Vec<u32>);

impl Shape {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::parameter(format!("shape {rows:?} has an empty row")));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::parameter(format!("shape {rows:?} is not weakly decreasing")));
        }
        Ok(Shape(rows))
    }

    /// Builds a shape from a weakly decreasing sequence, dropping trailing zeros.
    pub fn from_padded(rows: &[u32]) -> Result<Self> {
        let trimmed: Vec<u32> = rows.iter().copied().take_while(|&r| r > 0).collect();
        if rows[trimmed.len()..].iter().any(|&r| r > 0) {
            return Err(Error::parameter(format!("{rows:?} is not a padded partition")));
        }
        Shape::new(trimmed)
    }

    /// Shape whose columns have the given (weakly decreasing) lengths.
    pub fn from_column_lengths(cols: &[u32]) -> Result<Self> {
        Ok(Shape::new(cols.to_vec())?.transpose())
    }

    pub fn empty() -> Self {
        Shape(Vec::new())
    }

    pub fn rows(&self) -> &[u32] {
        &self.0
    }

    /// Number of rows, `l(D)`.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Shape {
        let width = self.0.first().copied().unwrap_or(0);
        Shape((1..=width).map(|c| self.0.iter().filter(|&&r| r >= c).count() as u32).collect())
    }

    /// Column lengths, i.e. the rows of the transpose.
    pub fn column_lengths(&self) -> Vec<u32> {
        self.transpose().0
    }

    /// Row `i` (0-based) padded with zero beyond the last row.
    pub fn row(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// All partitions of `size` with at most `max_rows` rows, in reverse
    /// lexicographic order.
    pub fn partitions(size: u32, max_rows: usize) -> Vec<Shape> {
        fn rec(rest: u32, cap: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Shape>) {
            if rest == 0 {
                out.push(Shape(cur.clone()));
                return;
            }
            if rows_left == 0 {
                return;
            }
            for part in (1..=cap.min(rest)).rev() {
                cur.push(part);
                rec(rest - part, part, rows_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, max_rows, &mut Vec::new(), &mut out);
        out
    }

    /// Dominance order on shapes of equal size: partial sums of `self`
    /// are all at least those of `other`.
    pub fn dominates(&self, other: &Shape) -> bool {
        let len = self.length().max(other.length());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..len {
            a += self.row(i);
            b += other.row(i);
            if a < b {
                return false;
            }
        }
        a == b
    }
}

impl TryFrom<Vec<u32>> for Shape {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Shape::new(v)
    }
}

impl From<Shape> for Vec<u32> {
    fn from(s: Shape) -> Self {
        s.0
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn strictly_increasing(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// A one-line tableau `[I:J]` over the matrix space `M_{n,m}`: a row index
/// set `I` and a column index set `J` of equal size, both strictly
/// increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneLineTableau {
    rows: Vec<u32>,
    cols: Vec<u32>,
    n: u32,
    m: u32,
}

impl OneLineTableau {
    pub fn new(rows: Vec<u32>, cols: Vec<u32>, n: u32, m: u32) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::parameter(format!(
                "one-line tableau needs |I| = |J| >= 1, got |I| = {}, |J| = {}",
                rows.len(),
                cols.len()
            )));
        }
        if !strictly_increasing(&rows) || !strictly_increasing(&cols) {
            return Err(Error::parameter("index sets of a one-line tableau must be strictly increasing"));
        }
        if rows[0] == 0 || *rows.last().unwrap() > n {
            return Err(Error::parameter(format!("row indices {rows:?} out of range 1..={n}")));
        }
        if cols[0] == 0 || *cols.last().unwrap() > m {
            return Err(Error::parameter(format!("column indices {cols:?} out of range 1..={m}")));
        }
        Ok(OneLineTableau { rows, cols, n, m })
    }

    /// `[1..l : J]`, an element of `L(n, m)`.
    pub fn from_columns_only(cols: Vec<u32>, n: u32, m: u32) -> Result<Self> {
        let rows = (1..=cols.len() as u32).collect();
        OneLineTableau::new(rows, cols, n, m)
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    /// Length `l([I:J])`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ambient(&self) -> (u32, u32) {
        (self.n, self.m)
    }

    /// Tableau order `self ⪯ other`: at least as long, and entrywise `<=` on
    /// the first `l(other)` entries of both index sets.
    pub fn precedes(&self, other: &OneLineTableau) -> bool {
        self.len() >= other.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a <= b)
            && self.cols.iter().zip(&other.cols).all(|(a, b)| a <= b)
    }

    /// Canonical order: length descending, then lexicographic on `(I, J)`.
    pub fn canonical_cmp(&self, other: &OneLineTableau) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.rows.cmp(&other.rows))
            .then_with(|| self.cols.cmp(&other.cols))
            .then_with(|| (self.n, self.m).cmp(&(other.n, other.m)))
    }

    pub fn to_raw(&self) -> RawTableau {
        RawTableau { rows: self.rows.clone(), cols: self.cols.clone() }
    }
}

impl PartialOrd for OneLineTableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OneLineTableau {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

fn write_index_set(f: &mut fmt::Formatter<'_>, v: &[u32], compact: bool) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 && !compact {
            write!(f, " ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for OneLineTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.rows.iter().chain(&self.cols).all(|&x| x < 10);
        write!(f, "[")?;
        write_index_set(f, &self.rows, compact)?;
        write!(f, ":")?;
        write_index_set(f, &self.cols, compact)?;
        write!(f, "]")
    }
}

/// Wire form of a one-line tableau, `{"I":[...],"J":[...]}`. The ambient
/// matrix size travels out of band.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTableau {
    #[serde(rename = "I")]
    pub rows: Vec<u32>,
    #[serde(rename = "J")]
    pub cols: Vec<u32>,
}

impl RawTableau {
    pub fn with_ambient(self, n: u32, m: u32) -> Result<OneLineTableau> {
        OneLineTableau::new(self.rows, self.cols, n, m)
    }
}

impl Serialize for OneLineTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

/// Concatenation of one-line tableaux with weakly decreasing lengths. The
/// empty double tableau is the identity of concatenation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleTableau {
    columns: Vec<OneLineTableau>,
}

impl DoubleTableau {
    pub fn new(columns: Vec<OneLineTableau>) -> Result<Self> {
        if let Some(first) = columns.first() {
            if columns.iter().any(|c| c.ambient() != first.ambient()) {
                return Err(Error::parameter("columns of a double tableau must share the ambient size"));
            }
        }
        if columns.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::parameter("column lengths of a double tableau must weakly decrease"));
        }
        Ok(DoubleTableau { columns })
    }

    /// Sorts an arbitrary product of minors into a double tableau: length
    /// descending, ties in canonical order.
    pub fn from_product(mut factors: Vec<OneLineTableau>) -> Result<Self> {
        factors.sort_by(|a, b| a.canonical_cmp(b));
        DoubleTableau::new(factors)
    }

    pub fn empty() -> Self {
        DoubleTableau { columns: Vec::new() }
    }

    pub fn columns(&self) -> &[OneLineTableau] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<OneLineTableau> {
        self.columns
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// `sh(t) = (l_1, ..., l_u)^t`.
    pub fn shape(&self) -> Shape {
        let lens: Vec<u32> = self.columns.iter().map(|c| c.len() as u32).collect();
        Shape(lens).transpose()
    }

    pub fn column_lengths(&self) -> Vec<u32> {
        self.columns.iter().map(|c| c.len() as u32).collect()
    }

    /// Multiset of row indices and of column indices, as count vectors
    /// indexed from 1.
    pub fn content(&self) -> (Vec<u32>, Vec<u32>) {
        content_of(&self.columns)
    }

    pub fn to_raw(&self) -> RawDoubleTableau {
        RawDoubleTableau { columns: self.columns.iter().map(|c| c.to_raw()).collect() }
    }
}

pub(crate) fn content_of(cols: &[OneLineTableau]) -> (Vec<u32>, Vec<u32>) {
    let (n, m) = cols.first().map(|c| c.ambient()).unwrap_or((0, 0));
    let mut rc = vec![0u32; n as usize + 1];
    let mut cc = vec![0u32; m as usize + 1];
    for c in cols {
        for &i in c.rows() {
            rc[i as usize] += 1;
        }
        for &j in c.cols() {
            cc[j as usize] += 1;
        }
    }
    (rc, cc)
}

impl fmt::Display for DoubleTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.columns.is_empty() {
            return write!(f, "1");
        }
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDoubleTableau {
    pub columns: Vec<RawTableau>,
}

impl RawDoubleTableau {
    pub fn with_ambient(self, n: u32, m: u32) -> Result<DoubleTableau> {
        let cols = self.columns.into_iter().map(|c| c.with_ambient(n, m)).collect::<Result<Vec<_>>>()?;
        DoubleTableau::new(cols)
    }
}

impl Serialize for DoubleTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

/// A filling of a Young diagram with entries in `1..=max_entry`, rows weakly
/// increasing and columns strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SemistandardTableau {
    rows: Vec<Vec<u32>>,
    max_entry: u32,
}

impl SemistandardTableau {
    pub fn new(rows: Vec<Vec<u32>>, max_entry: u32) -> Result<Self> {
        let lens: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
        Shape::new(lens)?;
        for r in &rows {
            if r.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::parameter(format!("row {r:?} is not weakly increasing")));
            }
            if r.iter().any(|&x| x == 0 || x > max_entry) {
                return Err(Error::parameter(format!("row {r:?} has entries outside 1..={max_entry}")));
            }
        }
        for w in rows.windows(2) {
            if w[1].iter().zip(&w[0]).any(|(lo, hi)| lo <= hi) {
                return Err(Error::parameter("columns must be strictly increasing"));
            }
        }
        Ok(SemistandardTableau { rows, max_entry })
    }

    /// Builds a tableau from its columns (top to bottom), left to right.
    pub fn from_columns(cols: &[Vec<u32>], max_entry: u32) -> Result<Self> {
        let height = cols.first().map_or(0, |c| c.len());
        let mut rows = vec![Vec::new(); height];
        for c in cols {
            if c.len() > height {
                return Err(Error::parameter("column lengths must weakly decrease"));
            }
            for (i, &x) in c.iter().enumerate() {
                rows[i].push(x);
            }
        }
        SemistandardTableau::new(rows, max_entry)
    }

    pub fn empty(max_entry: u32) -> Self {
        SemistandardTableau { rows: Vec::new(), max_entry }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn max_entry(&self) -> u32 {
        self.max_entry
    }

    pub fn shape(&self) -> Shape {
        Shape(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        let width = self.rows.first().map_or(0, |r| r.len());
        (0..width)
            .map(|c| self.rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect())
            .collect()
    }
}

impl fmt::Display for SemistandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.max_entry < 10;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            write_index_set(f, r, compact)?;
        }
        Ok(())
    }
}

/// Parses one `[i1 i2...:j1 j2...]` entry. Entries without whitespace are
/// read digit by digit, so `[123:135]` means `I = {1,2,3}`, `J = {1,3,5}`.
pub fn parse_one_line(s: &str, n: u32, m: u32) -> Result<OneLineTableau> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::parameter(format!("expected [I:J], got {s:?}")))?;
    let (i, j) = inner
        .split_once(':')
        .ok_or_else(|| Error::parameter(format!("missing ':' in {s:?}")))?;
    OneLineTableau::new(parse_index_list(i)?, parse_index_list(j)?, n, m)
}

pub(crate) fn parse_index_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let bad = |_| Error::parameter(format!("bad index list {s:?}"));
    if s.contains(char::is_whitespace) {
        s.split_whitespace().map(|t| t.parse::<u32>().map_err(bad)).collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::parameter(format!("bad index list {s:?}"))))
            .collect()
    }
}

/// Parses a comma-separated product of one-line tableaux, e.g.
/// `"[1:2],[2:1]"`.
pub fn parse_product(spec: &str, n: u32, m: u32) -> Result<Vec<OneLineTableau>> {
    let mut out = Vec::new();
    let mut rest = spec.trim();
    while !rest.is_empty() {
        let end = rest
            .find(']')
            .ok_or_else(|| Error::parameter(format!("unterminated entry in {spec:?}")))?;
        out.push(parse_one_line(&rest[..=end], n, m)?);
        rest = rest[end + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err(Error::parameter(format!("expected ',' between entries in {spec:?}")));
        }
    }
    Ok(out)
}

/// Parses rows separated by `/`, e.g. `"1125/2356/3467"`; rows follow the
/// same digit rule as index lists.
pub fn parse_ssyt(spec: &str, max_entry: u32) -> Result<SemistandardTableau> {
    if spec.trim().is_empty() {
        return Ok(SemistandardTableau::empty(max_entry));
    }
    let rows = spec.split('/').map(parse_index_list).collect::<Result<Vec<_>>>()?;
    SemistandardTableau::new(rows, max_entry)
}

/// Parses a comma-separated list of non-negative integers.
pub fn parse_int_list(spec: &str) -> Result<Vec<u32>> {
    if spec.trim().is_empty() {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::parameter(format!("bad integer list {spec:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpose_is_involutive() {
        let d = Shape::new(vec![4, 2, 1]).unwrap();
        assert_eq!(d.transpose().rows(), &[3, 2, 1, 1]);
        assert_eq!(d.transpose().transpose(), d);
        assert_eq!(Shape::empty().transpose(), Shape::empty());
    }

    #[test]
    fn shape_rejects_increasing_rows() {
        assert!(Shape::new(vec![1, 2]).is_err());
        assert!(Shape::new(vec![2, 0]).is_err());
        assert_eq!(Shape::from_padded(&[3, 1, 0, 0]).unwrap().rows(), &[3, 1]);
    }

    #[test]
    fn partitions_count() {
        assert_eq!(Shape::partitions(4, 4).len(), 5);
        assert_eq!(Shape::partitions(4, 2).len(), 3);
        assert_eq!(Shape::partitions(0, 3), vec![Shape::empty()]);
    }

    #[test]
    fn double_tableau_shape() {
        let t = parse_product("[123:124],[13:23],[2:3],[4:5]", 4, 5).unwrap();
        let t = DoubleTableau::new(t).unwrap();
        assert_eq!(t.shape().rows(), &[4, 2, 1]);
    }

    #[test]
    fn parse_and_display() {
        let t = parse_one_line("[1 2:10 11]", 2, 12).unwrap();
        assert_eq!(t.to_string(), "[1 2:10 11]");
        let t = parse_one_line("[123:135]", 4, 6).unwrap();
        assert_eq!(t.cols(), &[1, 3, 5]);
        assert_eq!(t.to_string(), "[123:135]");
        assert!(parse_one_line("[12:1]", 2, 2).is_err());
        assert!(parse_one_line("[21:12]", 2, 2).is_err());
        assert!(parse_product("[1:2] [2:1]", 2, 2).is_err());
    }

    #[test]
    fn ssyt_validation() {
        assert!(SemistandardTableau::new(vec![vec![1, 1, 2], vec![2, 3]], 3).is_ok());
        assert!(SemistandardTableau::new(vec![vec![1, 2], vec![1, 3]], 3).is_err());
        let t = SemistandardTableau::from_columns(&[vec![1, 2, 3], vec![1, 3], vec![2], vec![4]], 4).unwrap();
        assert_eq!(t.to_string(), "1124/23/3");
        assert_eq!(t.columns(), vec![vec![1, 2, 3], vec![1, 3], vec![2], vec![4]]);
    }

    #[test]
    fn json_shape() {
        let t = parse_one_line("[12:13]", 2, 3).unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"I":[1,2],"J":[1,3]}"#);
        let s: Shape = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(s.rows(), &[3, 1]);
        assert!(serde_json::from_str::<Shape>("[1,3]").is_err());
    }

    #[test]
    fn ssyt_parsing() {
        let t = parse_ssyt("1125/2356/3467", 7).unwrap();
        assert_eq!(t.rows(), &[vec![1, 1, 2, 5], vec![2, 3, 5, 6], vec![3, 4, 6, 7]]);
        assert_eq!(t.to_string(), "1125/2356/3467");
        assert_eq!(parse_ssyt("1 10/2", 10).unwrap().rows(), &[vec![1, 10], vec![2]]);
        assert!(parse_ssyt("21", 3).is_err());
        assert!(parse_ssyt("", 3).unwrap().rows().is_empty());
    }
}
