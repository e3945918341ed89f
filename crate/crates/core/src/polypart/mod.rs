//! Exact polynomials, integer partitions, and sums of polynomial values
//! over the parts of partitions and compositions.

mod lambda;
mod shifted;
mod partition;
mod poly;

pub use lambda::{
    lambda_family, LambdaFamily, LambdaLevel, LambdaParams, LevelSummary, NestingCheck,
    DEFAULT_LAMBDA_BUDGET,
};
pub use shifted::{
    coefficient_ratio_ceiling, e_upper, g_poly, g_rest_bound, r_ratio_holds, r_threshold,
    RestBound,
};
pub use partition::{
    distinct_fhat_count, enumerate_partitions, f_hat, fhat_values_with_largest_part, Partition,
    Partitions, MAX_PARTITION_N,
};
pub use poly::Polynomial;
