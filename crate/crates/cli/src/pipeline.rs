//! Chunked parallel map that hands results to the sink in input order.

use std::ops::ControlFlow;

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuildError, ThreadPoolBuilder};

pub struct OrderedPipeline {
    pool: ThreadPool,
    chunk: usize,
}

impl OrderedPipeline {
    /// `jobs = None` uses the available parallelism.
    pub fn new(jobs: Option<usize>) -> Result<Self, ThreadPoolBuildError> {
        let mut builder = ThreadPoolBuilder::new();
        if let Some(j) = jobs {
            builder = builder.num_threads(j.max(1));
        }
        let pool = builder.build()?;
        let chunk = 64 * pool.current_num_threads();
        Ok(OrderedPipeline { pool, chunk })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Maps `f` over `input` a chunk at a time. The sink sees results in
    /// input order and may stop the run early.
    pub fn run<T, R, F, S>(
        &self,
        input: impl Iterator<Item = T>,
        f: F,
        mut sink: S,
    ) -> ControlFlow<()>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync,
        S: FnMut(R) -> ControlFlow<()>,
    {
        let mut input = input.peekable();
        while input.peek().is_some() {
            let batch: Vec<T> = input.by_ref().take(self.chunk).collect();
            let results: Vec<R> = self
                .pool
                .install(|| batch.into_par_iter().map(&f).collect());
            for r in results {
                sink(r)?;
            }
        }
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_order_and_stops() {
        let pipe = OrderedPipeline::new(Some(3)).unwrap();
        let mut seen = Vec::new();
        let flow = pipe.run(
            0..1000u64,
            |x| x * x,
            |r| {
                seen.push(r);
                if r == 900 * 900 {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            },
        );
        assert_eq!(flow, ControlFlow::Break(()));
        assert_eq!(seen, (0..=900u64).map(|x| x * x).collect::<Vec<_>>());
    }
}
