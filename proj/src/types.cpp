#include "svcal/types.hpp"

namespace svcal {

EmbeddingSet EmbeddingSet::from_records(const std::vector<EmbeddingRecord>& records,
                                        Index declared_dim) {
  EmbeddingSet set;
  set.dim_ = declared_dim >= 0 ? declared_dim
                               : (records.empty() ? 0 : records.front().vector.size());
  const Index n = static_cast<Index>(records.size());
  set.vectors_.resize(set.dim_, n);
  set.durations_.resize(n);
  set.ids_.reserve(records.size());
  set.domains_.reserve(records.size());

  for (Index i = 0; i < n; ++i) {
    const EmbeddingRecord& rec = records[static_cast<size_t>(i)];
    const std::string where = "record " + std::to_string(i + 1);
    if (rec.id.empty()) throw Error("embedding set: " + where + ": empty id");
    if (rec.vector.size() != set.dim_)
      throw Error("embedding set: " + where + ": dimension " +
                  std::to_string(rec.vector.size()) + " != " + std::to_string(set.dim_));
    if (!rec.vector.allFinite())
      throw Error("embedding set: " + where + ": non-finite vector component");
    if (!(rec.duration_s > 0.0) || !std::isfinite(rec.duration_s))
      throw Error("embedding set: " + where + ": duration must be positive");
    if (!set.index_.emplace(rec.id, i).second)
      throw Error("embedding set: " + where + ": duplicate id \"" + rec.id + "\"");
    set.vectors_.col(i) = rec.vector;
    set.durations_[i] = rec.duration_s;
    set.ids_.push_back(rec.id);
    set.domains_.push_back(rec.domain);
  }
  return set;
}

Index EmbeddingSet::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error("embedding set: unknown id \"" + id + "\"");
  return it->second;
}

EmbeddingRecord EmbeddingSet::record(Index i) const {
  return EmbeddingRecord{ids_[static_cast<size_t>(i)], vectors_.col(i),
                         durations_[i], domains_[static_cast<size_t>(i)]};
}

TrialList TrialList::from_trials(std::vector<Trial> trials) {
  TrialList list;
  std::unordered_set<std::string> seen;
  seen.reserve(trials.size());
  for (size_t i = 0; i < trials.size(); ++i) {
    const Trial& t = trials[i];
    if (t.enroll_id.empty() || t.test_id.empty())
      throw Error("trial " + std::to_string(i + 1) + ": empty utterance id");
    // ids cannot contain tabs (TSV), so a tab is a safe pair separator
    if (!seen.insert(t.enroll_id + "\t" + t.test_id).second)
      throw Error("trial " + std::to_string(i + 1) + ": duplicate pair (" +
                  t.enroll_id + ", " + t.test_id + ")");
    switch (t.label) {
      case Label::target: ++list.n_target_; break;
      case Label::nontarget: ++list.n_nontarget_; break;
      case Label::unlabeled: ++list.n_unlabeled_; break;
    }
  }
  list.trials_ = std::move(trials);
  return list;
}

ScoreSet make_score_set(VectorXd scores, std::string stage, const TrialList& trials) {
  ScoreSet set{std::move(scores), std::move(stage)};
  check_aligned(trials, set);
  return set;
}

void check_aligned(const TrialList& trials, const ScoreSet& scores) {
  if (scores.scores.size() != trials.size())
    throw Error("score set (" + std::to_string(scores.scores.size()) +
                ") not aligned with trial list (" + std::to_string(trials.size()) + ")");
  if (!scores.scores.allFinite())
    throw Error("score set contains a non-finite entry");
}

}  // namespace svcal
