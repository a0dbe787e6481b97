//! Region vectors, the dimensionality-reducing encoder and neighbourhood
//! combination.

mod encoder;
mod neighbourhood;
mod region;

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use rayon::prelude::*;

pub use encoder::{train_encoder, Encoder, EncoderOptions};
pub use neighbourhood::{
    combine_neighbourhood, neighbourhood_vector, ring_average, NeighbourhoodMethod, NeighbourhoodVector,
};
pub use region::{axes, cc_axes, embed_region, sa_axes, RegionMethod, RegionVector, CC_DIM, SA_DIM, ST_DIM};

use crate::error::{Error, Result};
use crate::hexgrid::CellId;
use crate::osm::TagVocabulary;
use crate::study_area::CellBucket;

/// Per-cell vectors sharing one set of named axes.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    pub axes: Vec<String>,
    pub vectors: BTreeMap<CellId, Vec<f64>>,
}

impl EmbeddingTable {
    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Errors with every listed cell that has no vector.
    pub fn require(&self, cells: impl IntoIterator<Item = CellId>) -> Result<()> {
        let missing: Vec<String> = cells
            .into_iter()
            .filter(|c| !self.vectors.contains_key(c))
            .map(|c| c.to_string())
            .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::MissingEmbeddings(missing))
        }
    }

    /// Neighbourhood feature rows for `cells`, in the given order. Ring
    /// members without a vector count as zeros.
    pub fn features(&self, cells: &[CellId], k: u32, method: NeighbourhoodMethod) -> Result<Vec<Vec<f64>>> {
        self.require(cells.iter().copied())?;
        let dim = self.dim();
        Ok(cells
            .par_iter()
            .map(|&c| neighbourhood_vector(c, k, method, &self.vectors, dim).values)
            .collect())
    }

    /// Passes every vector through a trained encoder.
    pub fn encoded(&self, enc: &Encoder) -> Result<EmbeddingTable> {
        let vectors = self
            .vectors
            .par_iter()
            .map(|(&c, v)| enc.encode(v).map(|e| (c, e)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(EmbeddingTable {
            axes: (0..enc.bottleneck_dim).map(|i| format!("z{i}")).collect(),
            vectors,
        })
    }

    /// Writes `cell,<axis>...` rows in cell order.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(w);
        writer.write_record(std::iter::once("cell").chain(self.axes.iter().map(String::as_str)))?;
        for (c, v) in &self.vectors {
            let mut row = Vec::with_capacity(v.len() + 1);
            row.push(c.to_string());
            row.extend(v.iter().map(|x| x.to_string()));
            writer.write_record(&row)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(r);
        let headers = reader.headers()?.clone();
        if headers.get(0) != Some("cell") {
            return Err(Error::Row {
                line: 1,
                message: "embedding header must start with \"cell\"".into(),
            });
        }
        let axes: Vec<String> = headers.iter().skip(1).map(str::to_owned).collect();
        let mut vectors = BTreeMap::new();
        for row in reader.records() {
            let row = row?;
            let line = row.position().map_or(0, |p| p.line() as usize);
            let bad = |m: String| Error::Row { line, message: m };
            let cell: CellId = row[0].parse().map_err(|e: Error| bad(e.to_string()))?;
            let values = row
                .iter()
                .skip(1)
                .map(|f| f.parse::<f64>().map_err(|e| bad(format!("{f:?}: {e}"))))
                .collect::<Result<Vec<f64>>>()?;
            if values.len() != axes.len() {
                return Err(bad(format!("expected {} values, got {}", axes.len(), values.len())));
            }
            vectors.insert(cell, values);
        }
        Ok(Self { axes, vectors })
    }
}

/// Region vectors for every cell in `cells`; cells without a bucket get the
/// zero vector.
pub fn embed_city(
    buckets: &BTreeMap<CellId, CellBucket>,
    cells: &BTreeSet<CellId>,
    method: RegionMethod,
    vocab: Option<&TagVocabulary>,
) -> Result<EmbeddingTable> {
    let axes = axes(method, vocab)?;
    let cells: Vec<CellId> = cells.iter().copied().collect();
    let vectors = cells
        .par_iter()
        .map(|&c| {
            let v = match buckets.get(&c) {
                Some(b) => embed_region(b, method, vocab)?.values,
                None => vec![0.0; axes.len()],
            };
            Ok((c, v))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(EmbeddingTable { axes, vectors })
}
