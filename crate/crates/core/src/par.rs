//! Data-parallel helpers. With the `parallel` feature these run on rayon's pool;
//! without it they are plain sequential loops with the same results.

/// Whether the rayon backend is compiled in.
pub const ENABLED: bool = cfg!(feature = "parallel");

/// `items.map(f)` preserving order.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Folds `items` into per-worker accumulators, then merges them.
pub fn fold_reduce<T, A, I, F, M>(items: &[T], init: I, fold: F, merge: M) -> A
where
    T: Sync,
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &T) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().fold(&init, &fold).reduce(&init, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = merge;
        items.iter().fold(init(), fold)
    }
}

/// Runs two closures, potentially in parallel.
pub fn join<A, B, FA, FB>(a: FA, b: FB) -> (A, B)
where
    A: Send,
    B: Send,
    FA: FnOnce() -> A + Send,
    FB: FnOnce() -> B + Send,
{
    #[cfg(feature = "parallel")]
    {
        rayon::join(a, b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (a(), b())
    }
}
