#pragma once

#include <string>
#include <vector>

#include "miforge/core/session.h"

namespace miforge::lexmetrics {

struct TokenizedSession {
  std::vector<std::vector<std::string>> utterance_tokens;
  std::vector<std::string> all_tokens;
};

/// Utterances that tokenize to nothing are dropped.
TokenizedSession tokenize_session(const std::vector<std::string>& utterances);

/// Every utterance of the dialogue, both speakers, greeting included.
TokenizedSession tokenize_session(const SessionRecord& record);

/// Unigram entropy in bits over log2 of the distinct-token count.
double token_entropy(const TokenizedSession& s);

/// Unique over total bigrams, bigrams taken within utterances.
double distinct2(const TokenizedSession& s);

/// BLEU-4 of one candidate against a reference set: clipped counts, add-one
/// smoothing for n >= 2, brevity penalty against the closest reference
/// length (shorter wins ties).
double sentence_bleu(const std::vector<std::string>& candidate,
                     const std::vector<const std::vector<std::string>*>& references);

/// Mean BLEU of each utterance against all the others. Candidates are
/// scored in parallel; the mean is summed in utterance order.
double self_bleu(const TokenizedSession& s);
/// Single-threaded reference for self_bleu; results are bit-identical.
double self_bleu_serial(const TokenizedSession& s);

}  // namespace miforge::lexmetrics
