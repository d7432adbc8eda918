//! Fixtures for the pipeline benchmarks.

use rulecnl::generate::{corpus, VocabConfig};

pub const ORDERS_VOCAB: &str = include_str!("../../core/tests/data/orders.voc");
pub const ORDER_RULES: &str = include_str!("../../core/tests/data/order_rules.txt");

/// The longest example rule, used for single-rule measurements.
pub const COMPOUND: &str = "It is necessary that each order is shipped if the customer who places the order \
                            is adult and holds an account that has a outstanding balance that is greater than 0";

/// A fixed generated workload: one vocabulary and `rules` rules over it,
/// joined one per line.
pub fn generated(seed: u64, rules: usize) -> (String, String) {
    let pairs = corpus(seed, rules, rules, &VocabConfig::default());
    let vocab = pairs.first().map(|(v, _)| v.clone()).unwrap_or_default();
    let text = pairs.into_iter().map(|(_, r)| r).collect::<Vec<_>>().join("\n");
    (vocab, text)
}
