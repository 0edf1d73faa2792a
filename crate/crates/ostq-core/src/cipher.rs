//! Encryption over quasigroup extensions.
//!
//! A message is a string of elements of `Q`. The sender broadcasts the
//! extension's multiplication table and per-message strings `k` (elements
//! of `K`) and `c` (elements of the extension); the ciphertext is
//! `a_i = (q_i, k_i) ∘ c_i`. The private key is the data that rebuilds the
//! extension: the factor system `f` and automorphism assignment `G` in the
//! general Schreier-type scheme, or just the orientation bit vector in the
//! Steiner-triple-system variant, where the extension is the (canonical)
//! oriented Steiner quasigroup of the secret orientation. A system with `b`
//! blocks admits `2^b` orientations, which is the keyspace.
//!
//! Decryption solves `x ∘ c_i = a_i` by right division, reads the first
//! coordinate as `q_i`, and checks the second coordinate against `k_i`; the
//! redundant `k` coordinate serves as an integrity check.

use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::extension::{
    canonical_oriented_steiner_quasigroup, oriented_steiner_quasigroup, schreier_extension,
    AutomorphismAssignment, ExtensionError, ExtensionKind, ExtensionTable, FactorSystem,
};
use crate::quasigroup::CayleyTable;
use crate::sts::{construct_sts, is_admissible, Sign, StsError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CipherError {
    #[error(transparent)]
    Sts(#[from] StsError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error("{what} has length {got}, expected {expected}")]
    Length { what: &'static str, expected: usize, got: usize },
    #[error("symbol {value} at position {position} out of range (< {limit})")]
    SymbolOutOfRange { position: usize, value: usize, limit: usize },
    #[error("integrity check failed at position {position}: recovered k = {got}, expected {expected}")]
    Integrity { position: usize, expected: usize, got: usize },
    #[error("private key does not reproduce the public extension table")]
    InconsistentKey,
    #[error("extension kind `{0}` is not an oriented-system construction")]
    UnsupportedKind(ExtensionKind),
}

/// Public key: the extension table plus the broadcast strings `k` and `c`.
/// Fresh from [`keygen_sts`] the strings are empty; [`PublicKey::with_strings`]
/// or [`PublicKey::with_fresh_strings`] attach per-message material.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pub k_string: Vec<usize>,
    pub c_string: Vec<usize>,
    pub table: ExtensionTable,
}

impl PublicKey {
    pub fn new(table: ExtensionTable) -> Self {
        PublicKey { k_string: Vec::new(), c_string: Vec::new(), table }
    }

    pub fn with_strings(&self, k_string: Vec<usize>, c_string: Vec<usize>) -> PublicKey {
        PublicKey { k_string, c_string, table: self.table.clone() }
    }

    /// Draws fresh `k` and `c` strings of the given length from a seeded
    /// generator. Strings are meant to be fresh per message.
    pub fn with_fresh_strings(&self, len: usize, seed: u64) -> PublicKey {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k_order = self.table.k_order();
        let order = self.table.order();
        let k_string = (0..len).map(|_| rng.random_range(0..k_order)).collect();
        let c_string = (0..len).map(|_| rng.random_range(0..order)).collect();
        PublicKey { k_string, c_string, table: self.table.clone() }
    }
}

/// Private key material, sufficient to rebuild the public extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrivateKey {
    /// Steiner-triple-system variant: the secret is the orientation.
    Sts { n: usize, kind: ExtensionKind, orientation: Vec<bool>, seed: u64 },
    /// General Schreier-type scheme: the secret is `f` and `G`.
    General {
        q: CayleyTable,
        k: CayleyTable,
        f: FactorSystem,
        g: AutomorphismAssignment,
    },
}

impl PrivateKey {
    /// Rebuilds the extension table this key describes.
    pub fn rebuild_extension(&self) -> Result<ExtensionTable, CipherError> {
        match self {
            PrivateKey::Sts { n, kind, orientation, .. } => {
                let ots = construct_sts(*n)?.orient(orientation)?;
                match kind {
                    ExtensionKind::Canonical => Ok(canonical_oriented_steiner_quasigroup(&ots)),
                    ExtensionKind::Plus => Ok(oriented_steiner_quasigroup(&ots, Sign::Plus)),
                    ExtensionKind::Minus => Ok(oriented_steiner_quasigroup(&ots, Sign::Minus)),
                    ExtensionKind::Custom => Err(CipherError::UnsupportedKind(*kind)),
                }
            }
            PrivateKey::General { q, k, f, g } => Ok(schreier_extension(q, k, f, g)?),
        }
    }

    /// The factor system behind this key.
    pub fn factor_system(&self) -> Result<FactorSystem, CipherError> {
        match self {
            PrivateKey::Sts { n, kind, orientation, .. } => {
                let ots = construct_sts(*n)?.orient(orientation)?;
                match kind {
                    ExtensionKind::Canonical => Ok(FactorSystem::from_orientation_z3(&ots)),
                    ExtensionKind::Plus => Ok(FactorSystem::from_orientation_z2(&ots, Sign::Plus)),
                    ExtensionKind::Minus => {
                        Ok(FactorSystem::from_orientation_z2(&ots, Sign::Minus))
                    }
                    ExtensionKind::Custom => Err(CipherError::UnsupportedKind(*kind)),
                }
            }
            PrivateKey::General { f, .. } => Ok(f.clone()),
        }
    }

    /// True if rebuilding the extension reproduces the public table.
    pub fn is_consistent_with(&self, public: &PublicKey) -> Result<bool, CipherError> {
        Ok(self.rebuild_extension()?.table() == public.table.table())
    }
}

/// Ciphertext: one extension element per message symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub a_string: Vec<usize>,
}

/// Generates a key pair for the STS variant: a seeded random orientation of
/// the deterministic system on `n` points, and the selected oriented
/// extension as the public table. Deterministic in `(n, seed, kind)`.
pub fn keygen_sts(
    n: usize,
    seed: u64,
    kind: ExtensionKind,
) -> Result<(PublicKey, PrivateKey), CipherError> {
    if kind == ExtensionKind::Custom {
        return Err(CipherError::UnsupportedKind(kind));
    }
    let ts = construct_sts(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orientation: Vec<bool> = (0..ts.block_count()).map(|_| rng.random()).collect();
    let private = PrivateKey::Sts { n, kind, orientation, seed };
    let public = PublicKey::new(private.rebuild_extension()?);
    Ok((public, private))
}

fn check_symbols(s: &[usize], limit: usize) -> Result<(), CipherError> {
    for (position, &value) in s.iter().enumerate() {
        if value >= limit {
            return Err(CipherError::SymbolOutOfRange { position, value, limit });
        }
    }
    Ok(())
}

fn check_strings(public: &PublicKey, len: usize) -> Result<(), CipherError> {
    if public.k_string.len() != len {
        return Err(CipherError::Length { what: "k string", expected: len, got: public.k_string.len() });
    }
    if public.c_string.len() != len {
        return Err(CipherError::Length { what: "c string", expected: len, got: public.c_string.len() });
    }
    check_symbols(&public.k_string, public.table.k_order())?;
    check_symbols(&public.c_string, public.table.order())
}

fn encrypt_in(
    table: &ExtensionTable,
    q_string: &[usize],
    public: &PublicKey,
) -> Result<Ciphertext, CipherError> {
    check_strings(public, q_string.len())?;
    check_symbols(q_string, table.q_order())?;
    let a_string = q_string
        .iter()
        .zip(public.k_string.iter().zip(&public.c_string))
        .map(|(&q, (&k, &c))| table.mul(table.pair_index(q, k), c))
        .collect();
    Ok(Ciphertext { a_string })
}

/// Encrypts `q_string` as `a_i = (q_i, k_i) ∘ c_i`, computed in the
/// extension rebuilt from the private key and required to agree with the
/// public table.
pub fn encrypt(
    q_string: &[usize],
    public: &PublicKey,
    private: &PrivateKey,
) -> Result<Ciphertext, CipherError> {
    let table = private.rebuild_extension()?;
    if table.table() != public.table.table() {
        return Err(CipherError::InconsistentKey);
    }
    encrypt_in(&table, q_string, public)
}

/// Sender-side encryption from the public key alone; products are looked up
/// in the broadcast table.
pub fn encrypt_with_table(q_string: &[usize], public: &PublicKey) -> Result<Ciphertext, CipherError> {
    encrypt_in(&public.table, q_string, public)
}

/// Decrypts by right division: solves `x ∘ c_i = a_i`, reads `q_i` off the
/// first coordinate, and requires the second coordinate to equal `k_i`.
pub fn decrypt(
    ciphertext: &Ciphertext,
    public: &PublicKey,
    private: &PrivateKey,
) -> Result<Vec<usize>, CipherError> {
    let table = private.rebuild_extension()?;
    if table.table() != public.table.table() {
        return Err(CipherError::InconsistentKey);
    }
    let len = ciphertext.a_string.len();
    check_strings(public, len)?;
    check_symbols(&ciphertext.a_string, table.order())?;
    let mut q_string = Vec::with_capacity(len);
    for (position, (&a, (&k, &c))) in ciphertext
        .a_string
        .iter()
        .zip(public.k_string.iter().zip(&public.c_string))
        .enumerate()
    {
        let x = table
            .table()
            .right_div(a, c)
            .expect("extension tables are Latin");
        let (q, got_k) = table.decode(x);
        if got_k != k {
            return Err(CipherError::Integrity { position, expected: k, got: got_k });
        }
        q_string.push(q);
    }
    Ok(q_string)
}

/// Number of orientation keys for a system on `n` points:
/// exactly `2^(n(n-1)/6)`.
pub fn keyspace_size(n: usize) -> Result<BigUint, CipherError> {
    if !is_admissible(n) {
        return Err(CipherError::Sts(StsError::NotAdmissible { n }));
    }
    Ok(BigUint::from(1u8) << (n * (n - 1) / 6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn keygen_is_deterministic() {
        let (pub1, priv1) = keygen_sts(9, 42, ExtensionKind::Canonical).unwrap();
        let (pub2, priv2) = keygen_sts(9, 42, ExtensionKind::Canonical).unwrap();
        assert_eq!(pub1, pub2);
        assert_eq!(priv1, priv2);
        let (pub3, _) = keygen_sts(9, 43, ExtensionKind::Canonical).unwrap();
        assert_ne!(pub1, pub3);
    }

    #[test]
    fn keygen_rejects_inadmissible_orders() {
        assert!(matches!(
            keygen_sts(8, 0, ExtensionKind::Canonical),
            Err(CipherError::Sts(StsError::NotAdmissible { n: 8 }))
        ));
    }

    #[test]
    fn keygen_table_orders() {
        let (public, _) = keygen_sts(7, 5, ExtensionKind::Canonical).unwrap();
        assert_eq!(public.table.order(), 21);
        let (public, _) = keygen_sts(7, 5, ExtensionKind::Plus).unwrap();
        assert_eq!(public.table.order(), 14);
    }

    #[test]
    fn empty_message_round_trips() {
        let (public, private) = keygen_sts(7, 1, ExtensionKind::Canonical).unwrap();
        let public = public.with_fresh_strings(0, 2);
        let ct = encrypt(&[], &public, &private).unwrap();
        assert!(ct.a_string.is_empty());
        assert_eq!(decrypt(&ct, &public, &private).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn single_symbol_follows_the_table() {
        // STS(3), orientation bit 0, k1 = 0, c1 = (0,0)
        let private = PrivateKey::Sts {
            n: 3,
            kind: ExtensionKind::Canonical,
            orientation: vec![false],
            seed: 0,
        };
        let table = private.rebuild_extension().unwrap();
        let public = PublicKey::new(table.clone()).with_strings(vec![0], vec![0]);
        for q in 0..3 {
            let ct = encrypt(&[q], &public, &private).unwrap();
            assert_eq!(ct.a_string[0], table.mul(table.pair_index(q, 0), 0));
            assert_eq!(decrypt(&ct, &public, &private).unwrap(), vec![q]);
        }
    }

    #[test]
    fn round_trip_over_sts_7() {
        let (public, private) = keygen_sts(7, 11, ExtensionKind::Canonical).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let msg: Vec<usize> = (0..100).map(|_| rng.random_range(0..7)).collect();
        let public = public.with_fresh_strings(msg.len(), 100);
        let ct = encrypt(&msg, &public, &private).unwrap();
        assert_eq!(decrypt(&ct, &public, &private).unwrap(), msg);
    }

    #[test]
    fn general_schreier_scheme_round_trips() {
        use crate::quasigroup::{steiner_quasigroup, z3};
        let q = steiner_quasigroup(&construct_sts(9).unwrap());
        let f = FactorSystem::from_fn(9, 3, |a, b| (a * b + a + 2 * b) % 3);
        let g = AutomorphismAssignment::uniform(9, vec![0, 2, 1]).unwrap();
        let private = PrivateKey::General { q, k: z3(), f, g };
        let public = PublicKey::new(private.rebuild_extension().unwrap());
        let msg = vec![0, 5, 8, 3, 3, 1];
        let public = public.with_fresh_strings(msg.len(), 7);
        let ct = encrypt(&msg, &public, &private).unwrap();
        assert_eq!(decrypt(&ct, &public, &private).unwrap(), msg);
    }

    #[test]
    fn private_and_public_paths_agree() {
        let (public, private) = keygen_sts(9, 3, ExtensionKind::Minus).unwrap();
        let msg: Vec<usize> = (0..9).collect();
        let public = public.with_fresh_strings(msg.len(), 4);
        assert_eq!(
            encrypt(&msg, &public, &private).unwrap(),
            encrypt_with_table(&msg, &public).unwrap()
        );
    }

    #[test]
    fn length_and_range_errors() {
        let (public, private) = keygen_sts(7, 1, ExtensionKind::Canonical).unwrap();
        let public2 = public.with_fresh_strings(2, 5);
        assert!(matches!(
            encrypt(&[0, 1, 2], &public2, &private),
            Err(CipherError::Length { .. })
        ));
        assert!(matches!(
            encrypt(&[0, 9], &public2, &private),
            Err(CipherError::SymbolOutOfRange { position: 1, .. })
        ));
    }

    #[test]
    fn tampered_ciphertext_is_flagged_or_decodes_differently() {
        let (public, private) = keygen_sts(7, 8, ExtensionKind::Canonical).unwrap();
        let msg = vec![1, 2, 3, 4, 5];
        let public = public.with_fresh_strings(msg.len(), 9);
        let mut ct = encrypt(&msg, &public, &private).unwrap();
        ct.a_string[0] = (ct.a_string[0] + 1) % public.table.order();
        match decrypt(&ct, &public, &private) {
            Err(CipherError::Integrity { position: 0, .. }) => {}
            Ok(recovered) => assert_ne!(recovered, msg),
            Err(e) => panic!("unexpected error: {e}"),
        }
    }

    #[test]
    fn inconsistent_private_key_is_rejected() {
        let (public, _) = keygen_sts(7, 1, ExtensionKind::Canonical).unwrap();
        let (_, other_private) = keygen_sts(7, 2, ExtensionKind::Canonical).unwrap();
        let public = public.with_fresh_strings(1, 0);
        assert_eq!(
            encrypt(&[0], &public, &other_private),
            Err(CipherError::InconsistentKey)
        );
    }

    #[test]
    fn keyspace_sizes() {
        assert_eq!(keyspace_size(7).unwrap(), 128u8.into());
        assert_eq!(keyspace_size(9).unwrap(), 4096u16.into());
        assert_eq!(keyspace_size(13).unwrap(), 67108864u32.into());
        assert!(keyspace_size(8).is_err());
        // b = 79*78/6 = 1027 bits: must not overflow
        assert_eq!(keyspace_size(79).unwrap().bits(), 1028);
    }
}
