use ndarray::Array2;
use rand::distributions::{Distribution, WeightedIndex};
use rand::RngCore;

use super::{ProposalOutcome, Proposer};
use crate::error::{Error, Result};
use crate::ising::SpinConfig;

const STOCHASTIC_TOL: f64 = 1e-9;

/// Draws candidates from an explicit column-stochastic matrix, `Q[[to, from]]`.
#[derive(Debug, Clone)]
pub struct MatrixProposer {
    n: usize,
    columns: Vec<WeightedIndex<f64>>,
    symmetric: bool,
}

impl MatrixProposer {
    pub fn new(n: usize, q: &Array2<f64>) -> Result<Self> {
        let dim = 1usize << n;
        if q.dim() != (dim, dim) {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: q.nrows(),
            });
        }
        let mut columns = Vec::with_capacity(dim);
        for (j, col) in q.columns().into_iter().enumerate() {
            let sum: f64 = col.sum();
            if (sum - 1.0).abs() > STOCHASTIC_TOL || col.iter().any(|&x| x.is_nan() || x < 0.0) {
                return Err(Error::NotStochastic { column: j, sum });
            }
            columns.push(
                WeightedIndex::new(col.iter().copied())
                    .map_err(|e| Error::param("q", e.to_string()))?,
            );
        }
        let symmetric = q
            .iter()
            .zip(q.t().iter())
            .all(|(a, b)| (a - b).abs() <= STOCHASTIC_TOL);
        Ok(Self {
            n,
            columns,
            symmetric,
        })
    }
}

impl Proposer for MatrixProposer {
    fn propose(&self, current: &SpinConfig, rng: &mut dyn RngCore) -> Result<ProposalOutcome> {
        current.check_len(self.n)?;
        let to = self.columns[current.index()].sample(rng);
        Ok(ProposalOutcome::new(
            current,
            SpinConfig::from_index(to, self.n),
            1,
        ))
    }

    fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    fn name(&self) -> &'static str {
        "matrix"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn follows_columns() {
        // column 0 always goes to 1, column 1 splits evenly
        let q = array![[0.0, 0.5], [1.0, 0.5]];
        let p = MatrixProposer::new(1, &q).unwrap();
        assert!(!p.is_symmetric());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let zero = SpinConfig::zeros(1);
        let one: SpinConfig = "1".parse().unwrap();
        for _ in 0..50 {
            assert_eq!(p.propose(&zero, &mut rng).unwrap().candidate, one);
        }
        let hits = (0..10_000)
            .filter(|_| p.propose(&one, &mut rng).unwrap().candidate == one)
            .count();
        assert!((hits as f64 / 10_000.0 - 0.5).abs() < 0.02);
    }

    #[test]
    fn rejects_non_stochastic() {
        assert!(matches!(
            MatrixProposer::new(1, &array![[0.5, 0.5], [0.4, 0.5]]),
            Err(Error::NotStochastic { column: 0, .. })
        ));
        assert!(MatrixProposer::new(2, &array![[1.0, 0.0], [0.0, 1.0]]).is_err());
        assert!(MatrixProposer::new(1, &array![[1.0, 0.0], [0.0, 1.0]])
            .unwrap()
            .is_symmetric());
    }
}
