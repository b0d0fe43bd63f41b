use std::ops::Index;

use crate::{Error, Result};

/// Values over a contiguous integer index window `[start, end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Indexed<T> {
    start: i64,
    values: Vec<T>,
}

impl<T> Indexed<T> {
    pub fn new(start: i64, values: Vec<T>) -> Self {
        Indexed { start, values }
    }

    /// Fills `[start, end]` by evaluating `f` at each index.
    pub fn from_fn(start: i64, end: i64, f: impl FnMut(i64) -> T) -> Self {
        Indexed {
            start,
            values: (start..=end).map(f).collect(),
        }
    }

    /// Like [`Indexed::from_fn`] but stops at the first error.
    pub fn try_from_fn<E>(
        start: i64,
        end: i64,
        f: impl FnMut(i64) -> std::result::Result<T, E>,
    ) -> std::result::Result<Self, E> {
        Ok(Indexed {
            start,
            values: (start..=end)
                .map(f)
                .collect::<std::result::Result<_, E>>()?,
        })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last index (inclusive). Equals `start - 1` when empty.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, k: i64) -> bool {
        k >= self.start && k <= self.end()
    }

    /// True when every index of `[from, to]` is present.
    pub fn covers(&self, from: i64, to: i64) -> bool {
        from > to || (self.contains(from) && self.contains(to))
    }

    pub fn get(&self, k: i64) -> Option<&T> {
        if self.contains(k) {
            self.values.get((k - self.start) as usize)
        } else {
            None
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.start + i as i64, v))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Indexed<U> {
        Indexed {
            start: self.start,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub(crate) fn require(&self, from: i64, to: i64, what: &str) -> Result<()> {
        if self.covers(from, to) {
            Ok(())
        } else {
            Err(Error::WindowMismatch(format!(
                "{what} covers [{}, {}], need [{from}, {to}]",
                self.start,
                self.end()
            )))
        }
    }
}

impl<T: Clone> Indexed<T> {
    /// Copy of the sub-window `[from, to]`.
    pub fn slice(&self, from: i64, to: i64) -> Result<Self> {
        self.require(from, to, "sequence")?;
        let lo = (from - self.start) as usize;
        let hi = (to - self.start) as usize;
        Ok(Indexed {
            start: from,
            values: self.values[lo..=hi].to_vec(),
        })
    }
}

impl<T> Index<i64> for Indexed<T> {
    type Output = T;

    fn index(&self, k: i64) -> &T {
        match self.get(k) {
            Some(v) => v,
            None => panic!("index {k} outside [{}, {}]", self.start, self.end()),
        }
    }
}
