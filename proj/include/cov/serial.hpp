#pragma once

#include "cov/tx.hpp"

namespace cov {

// Canonical binary serialization. The exact byte layout is normative and
// documented in docs/serialization.md; tx_id stability depends on it.
//
// Building blocks (shared by every composite encoder):
//   - unsigned counts/lengths: minimal ULEB128
//   - signed integers: length-prefixed minimal big-endian two's complement,
//     empty payload for zero
//   - byte strings: length-prefixed raw bytes
//   - sequences: element count, then elements in order

void write_uleb(Bytes& out, uint64_t v);
void write_int(Bytes& out, const BigInt& v);

// Minimal big-endian two's-complement payload (no length prefix).
// encode_int(0) is empty; size in the script sense is its length.
Bytes encode_int(const BigInt& v);
BigInt decode_int(const Bytes& payload);  // strict: rejects non-minimal forms

Bytes encode_value(const Value& v);
Bytes encode_value_seq(const ValueSeq& s);
Bytes encode_script(const Script& s);
Bytes encode_tx(const Transaction& tx);

// Strict decoders: reject trailing bytes, non-minimal integers/ULEB128,
// unknown tags, and ill-typed script trees. Throw SerError.
Value decode_value(const Bytes& in);
ValueSeq decode_value_seq(const Bytes& in);
Script decode_script(const Bytes& in);
Transaction decode_tx(const Bytes& in);

// Digest (SHA-256) of the canonical serialization, witnesses included.
TxId tx_id(const Transaction& tx);

// Canonical serialization with every witness slot replaced by the empty
// sequence (the slot count is kept). Signatures cover its digest, which is
// why a signature cannot depend on any witness, including itself, and why
// the input index is not part of what is signed.
Bytes signing_payload(const Transaction& tx);
Bytes signing_payload_digest(const Transaction& tx);  // SHA-256 of the above

// Datum encoding used by the script-level hash operator: a leading domain
// byte keeps single values and sequences disjoint.
Bytes encode_datum_for_hash(const Value& v);
Bytes encode_datum_for_hash(const ValueSeq& s);

}  // namespace cov
