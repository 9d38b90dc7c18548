pub mod bench;
pub mod blockcipher;
pub mod cli;
pub mod digest;
pub mod homomorphic;
pub mod numtheory;
pub mod pubkey;

#[cfg(test)]
mod oracle;
