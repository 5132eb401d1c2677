use std::collections::HashSet;
use std::sync::Mutex;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uuid::Uuid;

use super::FdoError;
use crate::store::Upri;

/// Issues fresh UPRIs under a namespace.
///
/// Unseeded minters draw random v4 UUIDs; seeded minters draw the same UUID
/// sequence on every run. Both refuse to hand out an identifier twice.
#[derive(Debug)]
pub struct Minter {
    namespace: String,
    state: Mutex<MintState>,
}

#[derive(Debug)]
struct MintState {
    rng: Option<ChaCha8Rng>,
    issued: HashSet<Uuid>,
}

impl Minter {
    pub fn new(namespace: &str, seed: Option<u64>) -> Result<Self, FdoError> {
        let probe = format!("{namespace}00000000-0000-4000-8000-000000000000");
        if namespace.is_empty() || Upri::new(probe).is_err() {
            return Err(FdoError::MalformedNamespace(namespace.to_string()));
        }
        Ok(Self {
            namespace: namespace.to_string(),
            state: Mutex::new(MintState {
                rng: seed.map(ChaCha8Rng::seed_from_u64),
                issued: HashSet::new(),
            }),
        })
    }

    pub fn namespace(&self) -> &str {
        &self.namespace
    }

    pub fn mint(&self) -> Upri {
        let mut state = self.state.lock().expect("minter lock poisoned");
        loop {
            let id = match state.rng.as_mut() {
                Some(rng) => {
                    let mut bytes = [0u8; 16];
                    rng.fill_bytes(&mut bytes);
                    uuid::Builder::from_random_bytes(bytes).into_uuid()
                }
                None => Uuid::new_v4(),
            };
            if state.issued.insert(id) {
                return Upri::new_unchecked(format!("{}{}", self.namespace, id));
            }
        }
    }
}

/// Mints one identifier; see [`Minter`] for sequences.
pub fn mint_upri(namespace: &str, seed: Option<u64>) -> Result<Upri, FdoError> {
    Ok(Minter::new(namespace, seed)?.mint())
}

#[cfg(test)]
mod tests {
    use super::*;

    const NS: &str = "https://example.org/unit/";

    #[test]
    fn unseeded_distinct() {
        let m = Minter::new(NS, None).unwrap();
        assert_ne!(m.mint(), m.mint());
        assert!(m.mint().as_str().starts_with(NS));
    }

    #[test]
    fn seeded_repeatable() {
        let a = Minter::new(NS, Some(7)).unwrap();
        let b = Minter::new(NS, Some(7)).unwrap();
        let xs: Vec<_> = (0..5).map(|_| a.mint()).collect();
        let ys: Vec<_> = (0..5).map(|_| b.mint()).collect();
        assert_eq!(xs, ys);
        let c = Minter::new(NS, Some(8)).unwrap();
        assert_ne!(xs[0], c.mint());
    }

    #[test]
    fn ten_thousand_without_collision() {
        let m = Minter::new(NS, Some(1)).unwrap();
        let all: HashSet<_> = (0..10_000).map(|_| m.mint()).collect();
        assert_eq!(all.len(), 10_000);
    }

    #[test]
    fn malformed_namespace() {
        assert!(Minter::new("not an iri ", None).is_err());
        assert!(Minter::new("", None).is_err());
        assert!(mint_upri("urn:unit:", Some(3)).is_ok());
    }
}
