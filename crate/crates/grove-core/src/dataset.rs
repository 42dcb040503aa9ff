//! CSV ingestion, label encoding, stratified splits and bootstrap sampling.

use std::collections::HashMap;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::ChaCha8Rng;

/// Which column of a CSV file holds the class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    /// Zero-based column index.
    Index(usize),
    /// Header name; requires `has_header`.
    Name(String),
}

impl LabelColumn {
    /// Parses a CLI-style spec: a bare integer is an index, anything else a name.
    pub fn parse(spec: &str) -> LabelColumn {
        match spec.parse::<usize>() {
            Ok(idx) => LabelColumn::Index(idx),
            Err(_) => LabelColumn::Name(spec.to_string()),
        }
    }
}

/// An immutable classification dataset: an N×d matrix of finite reals plus
/// dense class labels in `[0, K)`.
///
/// Labels are encoded in order of first appearance; `class_names` maps the
/// dense index back to the original label string. The struct is cheap to
/// share across threads once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    n_features: usize,
    /// Row-major, `n_rows * n_features` values.
    features: Vec<f64>,
    labels: Vec<usize>,
    class_names: Vec<String>,
    feature_names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from row-major feature values, validating every
    /// invariant: shapes agree, values are finite, K ≥ 2 and every class
    /// index below K occurs at least once.
    pub fn new(
        n_features: usize,
        features: Vec<f64>,
        labels: Vec<usize>,
        class_names: Vec<String>,
        feature_names: Vec<String>,
    ) -> Result<Dataset> {
        if n_features == 0 {
            return Err(Error::InvalidDataset("no feature columns".into()));
        }
        if labels.is_empty() {
            return Err(Error::InvalidDataset("no rows".into()));
        }
        if features.len() != labels.len() * n_features {
            return Err(Error::InvalidDataset(format!(
                "feature matrix has {} values, expected {} rows x {} columns",
                features.len(),
                labels.len(),
                n_features
            )));
        }
        if feature_names.len() != n_features {
            return Err(Error::InvalidDataset(format!(
                "{} feature names for {} columns",
                feature_names.len(),
                n_features
            )));
        }
        let k = class_names.len();
        if k < 2 {
            return Err(Error::SingleClass(
                class_names.first().cloned().unwrap_or_default(),
            ));
        }
        let mut seen = vec![false; k];
        for &label in &labels {
            if label >= k {
                return Err(Error::InvalidDataset(format!(
                    "label index {label} out of range for {k} classes"
                )));
            }
            seen[label] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidDataset(format!(
                "class {:?} has no samples",
                class_names[missing]
            )));
        }
        for (i, &v) in features.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: i / n_features,
                    column: feature_names[i % n_features].clone(),
                });
            }
        }
        Ok(Dataset {
            n_features,
            features,
            labels,
            class_names,
            feature_names,
        })
    }

    /// Convenience constructor with synthetic `f{i}` / `c{k}` names.
    pub fn from_numeric(rows: &[Vec<f64>], labels: &[usize]) -> Result<Dataset> {
        let n_features = rows.first().map_or(0, Vec::len);
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        Dataset::new(
            n_features,
            rows.iter().flatten().copied().collect(),
            labels.to_vec(),
            (0..k).map(|c| format!("c{c}")).collect(),
            (0..n_features).map(|f| format!("f{f}")).collect(),
        )
    }

    /// Loads an RFC-4180-style CSV file. The label column is removed from the
    /// feature matrix and encoded by first appearance; all remaining cells
    /// must parse as finite reals (decimal point only, no locale handling).
    pub fn load_csv<P: AsRef<Path>>(
        path: P,
        label_column: &LabelColumn,
        has_header: bool,
    ) -> Result<Dataset> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(has_header)
            .from_path(path.as_ref())?;

        let header: Vec<String> = if has_header {
            reader.headers()?.iter().map(str::to_string).collect()
        } else {
            Vec::new()
        };

        let mut records = reader.records();
        let first = match records.next() {
            Some(rec) => rec?,
            None => return Err(Error::InvalidDataset("no rows".into())),
        };
        let width = first.len();

        let label_idx = match label_column {
            LabelColumn::Index(idx) => {
                if *idx >= width {
                    return Err(Error::MissingLabelColumn(idx.to_string()));
                }
                *idx
            }
            LabelColumn::Name(name) => header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::MissingLabelColumn(name.clone()))?,
        };

        let feature_names: Vec<String> = if has_header {
            header
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != label_idx)
                .map(|(_, h)| h.clone())
                .collect()
        } else {
            (0..width - 1).map(|f| format!("f{f}")).collect()
        };
        let n_features = width - 1;
        if n_features == 0 {
            return Err(Error::InvalidDataset("no feature columns".into()));
        }

        let mut features = Vec::new();
        let mut labels = Vec::new();
        let mut class_names: Vec<String> = Vec::new();
        let mut class_index: HashMap<String, usize> = HashMap::new();

        let mut parse_record = |row: usize, record: &csv::StringRecord| -> Result<()> {
            if record.len() != width {
                return Err(Error::InvalidDataset(format!(
                    "row {row} has {} fields, expected {width}",
                    record.len()
                )));
            }
            for (col, cell) in record.iter().enumerate() {
                if col == label_idx {
                    let label = match class_index.get(cell) {
                        Some(&idx) => idx,
                        None => {
                            let idx = class_names.len();
                            class_names.push(cell.to_string());
                            class_index.insert(cell.to_string(), idx);
                            idx
                        }
                    };
                    labels.push(label);
                } else {
                    let column = || {
                        feature_names[col - usize::from(col > label_idx)]
                            .clone()
                    };
                    let value: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                        row,
                        column: column(),
                        value: cell.to_string(),
                    })?;
                    if !value.is_finite() {
                        return Err(Error::NonFinite { row, column: column() });
                    }
                    features.push(value);
                }
            }
            Ok(())
        };

        parse_record(0, &first)?;
        for (row, record) in records.enumerate() {
            parse_record(row + 1, &record?)?;
        }

        if class_names.len() < 2 {
            return Err(Error::SingleClass(class_names.pop().unwrap_or_default()));
        }
        Dataset::new(n_features, features, labels, class_names, feature_names)
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    /// Number of classes K.
    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.n_features..(i + 1) * self.n_features]
    }

    pub fn value(&self, row: usize, feature: usize) -> f64 {
        self.features[row * self.n_features + feature]
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    /// Per-class sample counts.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_classes()];
        for &label in &self.labels {
            counts[label] += 1;
        }
        counts
    }

    /// Dataset restricted to `rows` (in the given order), keeping names.
    fn subset(&self, rows: &[usize]) -> Dataset {
        let mut features = Vec::with_capacity(rows.len() * self.n_features);
        let mut labels = Vec::with_capacity(rows.len());
        for &r in rows {
            features.extend_from_slice(self.row(r));
            labels.push(self.labels[r]);
        }
        Dataset {
            n_features: self.n_features,
            features,
            labels,
            class_names: self.class_names.clone(),
            feature_names: self.feature_names.clone(),
        }
    }
}

/// Splits `ds` into disjoint train/test parts with per-class test counts of
/// `round(count * test_fraction)` clamped to `[1, count - 1]`. Rows keep
/// their original relative order on both sides; the same seed always yields
/// the same partition.
pub fn stratified_split(ds: &Dataset, test_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidFraction(test_fraction));
    }
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); ds.n_classes()];
    for (row, &label) in ds.labels().iter().enumerate() {
        by_class[label].push(row);
    }
    for (class, rows) in by_class.iter().enumerate() {
        if rows.len() < 2 {
            return Err(Error::ClassTooSmall {
                class: ds.class_names[class].clone(),
                count: rows.len(),
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test_rows = Vec::new();
    let mut train_rows = Vec::new();
    for rows in &mut by_class {
        let count = rows.len();
        let want = ((count as f64 * test_fraction).round() as usize).clamp(1, count - 1);
        rows.shuffle(&mut rng);
        test_rows.extend_from_slice(&rows[..want]);
        train_rows.extend_from_slice(&rows[want..]);
    }
    if train_rows.is_empty() {
        return Err(Error::EmptySide("train"));
    }
    if test_rows.is_empty() {
        return Err(Error::EmptySide("test"));
    }
    train_rows.sort_unstable();
    test_rows.sort_unstable();
    Ok((ds.subset(&train_rows), ds.subset(&test_rows)))
}

/// A bootstrap resample: `in_bag` holds `n` row indices drawn with
/// replacement (in draw order), `oob` the sorted complement of the distinct
/// drawn set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSample {
    n: usize,
    in_bag: Vec<usize>,
    oob: Vec<usize>,
}

impl IndexSample {
    /// Builds a sample from an explicit in-bag multiset over `[0, n)`.
    pub fn from_in_bag(in_bag: Vec<usize>, n: usize) -> Result<IndexSample> {
        if n == 0 || in_bag.is_empty() {
            return Err(Error::InvalidDataset("empty bootstrap sample".into()));
        }
        let mut present = vec![false; n];
        for &i in &in_bag {
            if i >= n {
                return Err(Error::InvalidDataset(format!(
                    "in-bag index {i} out of range for n = {n}"
                )));
            }
            present[i] = true;
        }
        let oob = (0..n).filter(|&i| !present[i]).collect();
        Ok(IndexSample { n, in_bag, oob })
    }

    /// The degenerate "every row exactly once" sample.
    pub fn identity(n: usize) -> IndexSample {
        IndexSample {
            n,
            in_bag: (0..n).collect(),
            oob: Vec::new(),
        }
    }

    /// Population size the indices refer to.
    pub fn n(&self) -> usize {
        self.n
    }

    /// In-bag row indices, with multiplicity, in draw order.
    pub fn in_bag(&self) -> &[usize] {
        &self.in_bag
    }

    /// Sorted out-of-bag row indices.
    pub fn oob(&self) -> &[usize] {
        &self.oob
    }

    pub fn is_oob(&self, row: usize) -> bool {
        self.oob.binary_search(&row).is_ok()
    }
}

/// Draws `n` indices uniformly with replacement from `[0, n)` and records the
/// out-of-bag complement. Pure function of `(n, seed)`.
pub fn bootstrap(n: usize, seed: u64) -> IndexSample {
    assert!(n >= 1, "bootstrap needs at least one row");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = vec![false; n];
    let mut in_bag = Vec::with_capacity(n);
    for _ in 0..n {
        let i = rng.random_range(0..n);
        present[i] = true;
        in_bag.push(i);
    }
    let oob = (0..n).filter(|&i| !present[i]).collect();
    IndexSample { n, in_bag, oob }
}
