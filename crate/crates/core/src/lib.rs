//! Exact computations with truncated Weil algebras, their Vey bases and
//! rigid classes, and the model complexes that certify independence of
//! Pontrjagin and secondary classes.

pub mod algebra;
pub mod dga;
pub mod frame;
pub mod linalg;
pub mod pontrjagin;
pub mod selftest;
pub mod weil;

use serde::Serializer;

use algebra::{rational_string, Rational};

pub(crate) fn serialize_rational_matrix<S: Serializer>(
    m: &[Vec<Rational>],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        let row: Vec<String> = row.iter().map(rational_string).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}
