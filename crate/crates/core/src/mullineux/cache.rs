//! Memo cache for `M_e` on `e`-regular partitions, with an optional
//! line-oriented persistence format `e;partition;image`.

use std::collections::{BTreeSet, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use dashmap::DashMap;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Default)]
pub struct MemoCache {
    map: DashMap<(usize, Partition), Partition>,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, e: usize, lambda: &Partition) -> Option<Partition> {
        self.map.get(&(e, lambda.clone())).map(|v| v.clone())
    }

    /// Stores `image` unless another caller got there first; either way the
    /// stored value is returned.
    pub fn get_or_insert(&self, e: usize, lambda: Partition, image: Partition) -> Partition {
        self.map.entry((e, lambda)).or_insert(image).clone()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn clear(&self) {
        self.map.clear();
    }

    /// All entries sorted by `(e, partition)`.
    pub fn entries(&self) -> Vec<(usize, Partition, Partition)> {
        let mut out: Vec<_> = self
            .map
            .iter()
            .map(|kv| (kv.key().0, kv.key().1.clone(), kv.value().clone()))
            .collect();
        out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        out
    }

    /// Loads records from `path`. Every record must map an `e`-regular
    /// partition to an `e`-regular partition of the same size, and when both
    /// directions of a pair are present they must agree.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let records = read_records(path)?;
        let bad = |line: usize, reason: String| Error::Cache {
            path: path.to_owned(),
            reason: format!("line {line}: {reason}"),
        };
        let mut staged: HashMap<(usize, Partition), Partition> = HashMap::new();
        // image -> preimage, to catch a record whose target already has
        // another preimage
        let mut inverse: HashMap<(usize, Partition), Partition> = HashMap::new();
        for (line, e, lambda, image) in records {
            if !lambda.is_regular(e) || !image.is_regular(e) {
                return Err(bad(line, format!("{lambda} -> {image} is not {e}-regular")));
            }
            if lambda.size() != image.size() {
                return Err(bad(line, format!("{lambda} -> {image} changes size")));
            }
            if let Some(old) = staged.get(&(e, lambda.clone())) {
                if *old != image {
                    return Err(bad(
                        line,
                        format!("{lambda} maps to both {old} and {image}"),
                    ));
                }
            }
            if let Some(back) = staged.get(&(e, image.clone())) {
                if *back != lambda {
                    return Err(bad(
                        line,
                        format!("{lambda} -> {image} but {image} -> {back}"),
                    ));
                }
            }
            if let Some(pre) = inverse.get(&(e, lambda.clone())) {
                if *pre != image {
                    return Err(bad(
                        line,
                        format!("{lambda} -> {image} but {pre} -> {lambda}"),
                    ));
                }
            }
            inverse.insert((e, image.clone()), lambda.clone());
            staged.insert((e, lambda), image);
        }
        let count = staged.len();
        for ((e, lambda), image) in staged {
            self.get_or_insert(e, lambda, image);
        }
        Ok(count)
    }

    /// Appends every entry not already recorded in `path`.
    pub fn persist(&self, path: &Path) -> Result<usize> {
        let existing: BTreeSet<(usize, Partition)> = if path.exists() {
            read_records(path)?
                .into_iter()
                .map(|(_, e, lambda, _)| (e, lambda))
                .collect()
        } else {
            BTreeSet::new()
        };
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut out = BufWriter::new(file);
        let mut written = 0;
        for (e, lambda, image) in self.entries() {
            if existing.contains(&(e, lambda.clone())) {
                continue;
            }
            writeln!(out, "{e};{lambda};{image}")?;
            written += 1;
        }
        out.flush()?;
        Ok(written)
    }
}

fn read_records(path: &Path) -> Result<Vec<(usize, usize, Partition, Partition)>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let bad = |reason: String| Error::Cache {
            path: path.to_owned(),
            reason: format!("line {}: {reason}", idx + 1),
        };
        let fields: Vec<&str> = text.split(';').collect();
        let [e, lambda, image] = fields.as_slice() else {
            return Err(bad(format!("expected 3 fields, found {}", fields.len())));
        };
        let e: usize = e.trim().parse().map_err(|_| bad(format!("bad e {e:?}")))?;
        if e < 2 {
            return Err(bad(format!("e = {e} must be at least 2")));
        }
        let lambda: Partition = lambda.parse().map_err(|err: Error| bad(err.to_string()))?;
        let image: Partition = image.parse().map_err(|err: Error| bad(err.to_string()))?;
        out.push((idx + 1, e, lambda, image));
    }
    Ok(out)
}
