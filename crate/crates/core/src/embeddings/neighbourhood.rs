use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::{ring, CellId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NeighbourhoodMethod {
    Concatenate,
    Average,
    /// Ring weights 1/(k+1).
    Diminishing,
    /// Ring weights 1/(k+1)².
    DiminishingSquared,
}

impl NeighbourhoodMethod {
    pub const ALL: [NeighbourhoodMethod; 4] = [
        NeighbourhoodMethod::Concatenate,
        NeighbourhoodMethod::Average,
        NeighbourhoodMethod::Diminishing,
        NeighbourhoodMethod::DiminishingSquared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NeighbourhoodMethod::Concatenate => "concatenate",
            NeighbourhoodMethod::Average => "average",
            NeighbourhoodMethod::Diminishing => "diminishing",
            NeighbourhoodMethod::DiminishingSquared => "diminishing_squared",
        }
    }

    /// Weight of ring `k` for the averaging methods.
    pub fn weight(self, k: usize) -> f64 {
        let k1 = (k + 1) as f64;
        match self {
            NeighbourhoodMethod::Concatenate | NeighbourhoodMethod::Average => 1.0,
            NeighbourhoodMethod::Diminishing => 1.0 / k1,
            NeighbourhoodMethod::DiminishingSquared => 1.0 / (k1 * k1),
        }
    }

    /// Output dimension for base dimension `n` and `k` rings.
    pub fn output_dim(self, n: usize, k: u32) -> usize {
        match self {
            NeighbourhoodMethod::Concatenate => n * (k as usize + 1),
            _ => n,
        }
    }
}

impl fmt::Display for NeighbourhoodMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NeighbourhoodMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NeighbourhoodMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::config(format!("unknown neighbourhood method {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeighbourhoodVector {
    pub base_cell: CellId,
    pub k: u32,
    pub method: NeighbourhoodMethod,
    pub values: Vec<f64>,
}

/// Mean vector of the cells in ring `k` around `cell`.
///
/// Cells without a vector count as zeros and stay in the denominator, so a
/// ring always averages over its full membership.
pub fn ring_average(cell: CellId, k: u32, vectors: &BTreeMap<CellId, Vec<f64>>, dim: usize) -> Vec<f64> {
    if k == 0 {
        return vectors.get(&cell).cloned().unwrap_or_else(|| vec![0.0; dim]);
    }
    let members = ring(cell, k);
    let mut acc = vec![0.0; dim];
    for m in &members {
        if let Some(v) = vectors.get(m) {
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x;
            }
        }
    }
    let n = members.len() as f64;
    acc.iter_mut().for_each(|a| *a /= n);
    acc
}

/// Combines per-ring vectors `t₀..t_K` into one vector.
pub fn combine_neighbourhood(rings: &[Vec<f64>], method: NeighbourhoodMethod) -> Result<Vec<f64>> {
    let Some(first) = rings.first() else {
        return Err(Error::input("at least one ring vector is required"));
    };
    let n = first.len();
    if let Some((k, bad)) = rings.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::input(format!("ring {k} has dimension {} but ring 0 has {n}", bad.len())));
    }
    if method == NeighbourhoodMethod::Concatenate {
        return Ok(rings.concat());
    }
    let mut acc = vec![0.0; n];
    let mut total = 0.0;
    for (k, r) in rings.iter().enumerate() {
        let w = method.weight(k);
        total += w;
        for (a, x) in acc.iter_mut().zip(r) {
            *a += w * x;
        }
    }
    acc.iter_mut().for_each(|a| *a /= total);
    Ok(acc)
}

/// Neighbourhood embedding of one cell.
pub fn neighbourhood_vector(
    cell: CellId,
    k: u32,
    method: NeighbourhoodMethod,
    vectors: &BTreeMap<CellId, Vec<f64>>,
    dim: usize,
) -> NeighbourhoodVector {
    let rings: Vec<Vec<f64>> = (0..=k).map(|i| ring_average(cell, i, vectors, dim)).collect();
    let values = combine_neighbourhood(&rings, method).expect("rings share the base dimension");
    NeighbourhoodVector {
        base_cell: cell,
        k,
        method,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::{cell_of, LatLng, Resolution};

    fn approx(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn k0_is_identity_for_every_method() {
        let t0 = vec![1.5, -2.0, 3.0];
        for m in NeighbourhoodMethod::ALL {
            assert_eq!(combine_neighbourhood(std::slice::from_ref(&t0), m).unwrap(), t0);
        }
    }

    #[test]
    fn hand_evaluated_weights() {
        let rings = [vec![1.0, 0.0], vec![0.0, 1.0]];
        let sq = combine_neighbourhood(&rings, NeighbourhoodMethod::DiminishingSquared).unwrap();
        assert!(approx(&sq, &[0.8, 0.2]));
        let dim = combine_neighbourhood(&rings, NeighbourhoodMethod::Diminishing).unwrap();
        assert!(approx(&dim, &[2.0 / 3.0, 1.0 / 3.0]));
        let avg = combine_neighbourhood(&rings, NeighbourhoodMethod::Average).unwrap();
        assert!(approx(&avg, &[0.5, 0.5]));
    }

    #[test]
    fn concatenation_dimension() {
        let rings: Vec<Vec<f64>> = (0..4).map(|k| vec![k as f64; 20]).collect();
        let v = combine_neighbourhood(&rings, NeighbourhoodMethod::Concatenate).unwrap();
        assert_eq!(v.len(), 80);
        assert_eq!(NeighbourhoodMethod::Concatenate.output_dim(20, 3), 80);
    }

    #[test]
    fn dimension_mismatch() {
        let rings = [vec![1.0, 0.0], vec![0.0]];
        assert!(combine_neighbourhood(&rings, NeighbourhoodMethod::Average).is_err());
    }

    #[test]
    fn ring_average_semantics() {
        let c = cell_of(LatLng::new(51.1, 17.0).unwrap(), Resolution::new(10).unwrap());
        let v = vec![2.0, 4.0];
        let mut vectors: BTreeMap<CellId, Vec<f64>> = ring(c, 1).into_iter().map(|n| (n, v.clone())).collect();
        vectors.insert(c, vec![9.0, 9.0]);
        assert_eq!(ring_average(c, 0, &vectors, 2), vec![9.0, 9.0]);
        assert!(approx(&ring_average(c, 1, &vectors, 2), &v));
        // Dropping one neighbour keeps it in the denominator.
        let gone = *ring(c, 1).iter().next().unwrap();
        vectors.remove(&gone);
        assert!(approx(&ring_average(c, 1, &vectors, 2), &[2.0 * 5.0 / 6.0, 4.0 * 5.0 / 6.0]));
    }
}
