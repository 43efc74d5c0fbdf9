#pragma once

#include "svcal/types.hpp"

namespace svcal {

enum class EmbeddingFormat { binary, tsv };

// EVEC binary layout (all integers little-endian):
//   magic "EVEC" (0x45 0x56 0x45 0x43), version byte 0x01,
//   u32 dimension d, u64 record count n, then n records of
//   { u16 id_len, id bytes, f32 duration_s, u16 domain_len, domain bytes,
//     d x f32 components }.
EmbeddingSet read_embeddings(const std::string& path, EmbeddingFormat format);
void write_embeddings(const EmbeddingSet& set, const std::string& path,
                      EmbeddingFormat format);

/// Size in bytes of the EVEC serialization of `set`.
size_t evec_file_size(const EmbeddingSet& set);

// Trial TSV: enroll<TAB>test[<TAB>label[<TAB>domain]], label in {tgt, imp};
// a missing label means unlabeled.
TrialList read_trials(const std::string& path);
void write_trials(const TrialList& trials, const std::string& path);

// Score TSV: enroll<TAB>test<TAB>score with 9 significant digits.
void write_scores(const TrialList& trials, const ScoreSet& scores,
                  const std::string& path);
ScoreSet read_scores(const std::string& path, const TrialList& trials);

}  // namespace svcal
