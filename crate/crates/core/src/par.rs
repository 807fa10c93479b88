//! Data-parallel helpers. Without the `parallel` feature every mode runs on
//! the calling thread.

/// Execution mode for the enumeration-heavy entry points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// Maps every item to a batch of results and concatenates the batches in
/// input order, so both modes return identical vectors.
pub fn flat_map<T, U, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Vec<U> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().flat_map_iter(f).collect()
        }
        _ => items.into_iter().flat_map(f).collect(),
    }
}

/// Order-preserving map.
pub fn map<T, U, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    flat_map(exec, items, |x| vec![f(x)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..500).collect();
        let f = |x: u64| (0..x % 7).map(|k| x * k).collect::<Vec<_>>();
        assert_eq!(
            flat_map(Exec::Sequential, items.clone(), f),
            flat_map(Exec::Parallel, items, f)
        );
    }
}
