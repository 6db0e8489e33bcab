//! Execution policy for the exhaustive sweeps.
//!
//! With the `parallel` feature (default) sweeps fan out over a rayon pool;
//! without it every policy runs on the calling thread. Results always come
//! back in input order, so output never depends on the policy.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[default]
    Sequential,
    /// `jobs == 0` uses rayon's global pool.
    Parallel { jobs: usize },
}

impl Exec {
    /// Policy for a `--jobs J` style setting: `J <= 1` is sequential.
    pub fn with_jobs(jobs: usize) -> Self {
        if jobs <= 1 {
            Exec::Sequential
        } else {
            Exec::Parallel { jobs }
        }
    }

    pub fn parallel() -> Self {
        Exec::Parallel { jobs: 0 }
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel { jobs } => par_map(jobs, items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(jobs: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;

    if jobs == 0 {
        return items.par_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(_jobs: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..500).collect();
        let seq = Exec::Sequential.map(&xs, |x| x * x);
        let par = Exec::Parallel { jobs: 3 }.map(&xs, |x| x * x);
        let global = Exec::parallel().map(&xs, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq, global);
    }

    #[test]
    fn jobs_one_is_sequential() {
        assert_eq!(Exec::with_jobs(1), Exec::Sequential);
        assert_eq!(Exec::with_jobs(0), Exec::Sequential);
        assert_eq!(Exec::with_jobs(4), Exec::Parallel { jobs: 4 });
    }
}
