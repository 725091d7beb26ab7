use std::fmt;
use std::hash::{Hash, Hasher};

/// Largest arity any schema may declare.
pub const MAX_ARITY: usize = 12;

/// A fixed-length tuple of integer arguments.
///
/// Stored inline so the evaluators can copy tuples freely on the hot path.
#[derive(Clone, Copy)]
pub struct ArgTuple {
    len: u8,
    vals: [i64; MAX_ARITY],
}

impl ArgTuple {
    /// Builds a tuple from a slice. Returns `None` if the slice is empty or
    /// longer than [`MAX_ARITY`].
    pub fn new(values: &[i64]) -> Option<Self> {
        if values.is_empty() || values.len() > MAX_ARITY {
            return None;
        }
        let mut vals = [0; MAX_ARITY];
        vals[..values.len()].copy_from_slice(values);
        Some(ArgTuple {
            len: values.len() as u8,
            vals,
        })
    }

    pub fn one(x: i64) -> Self {
        Self::new(&[x]).unwrap()
    }

    pub fn triple(x: i64, y: i64, z: i64) -> Self {
        Self::new(&[x, y, z]).unwrap()
    }

    pub fn arity(&self) -> usize {
        self.len as usize
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.vals[..self.len as usize]
    }

    pub fn get(&self, i: usize) -> i64 {
        self.as_slice()[i]
    }

    /// The `i`-th rotated argument list with its head decremented:
    /// `(x_i - 1, x_{i+1}, ..., x_m, x_1, ..., x_{i-1})`, zero-based.
    pub fn rotated_decrement(&self, i: usize) -> Self {
        let m = self.arity();
        let mut out = *self;
        for j in 0..m {
            out.vals[j] = self.vals[(i + j) % m];
        }
        out.vals[0] -= 1;
        out
    }
}

impl PartialEq for ArgTuple {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl Eq for ArgTuple {}

impl Hash for ArgTuple {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.as_slice().hash(state)
    }
}

impl PartialOrd for ArgTuple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ArgTuple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.as_slice().cmp(other.as_slice())
    }
}

impl fmt::Debug for ArgTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ArgTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.as_slice().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl From<(i64, i64, i64)> for ArgTuple {
    fn from((x, y, z): (i64, i64, i64)) -> Self {
        ArgTuple::triple(x, y, z)
    }
}
