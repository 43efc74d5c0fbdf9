#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace svcal {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::MatrixXf;
using Eigen::VectorXd;

/// Invalid input data or broken invariant. Maps to CLI exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem or stream failure. Maps to CLI exit code 2.
struct IoError : Error {
  using Error::Error;
};

/// One utterance: id, embedding vector (f32 on disk, f64 in memory),
/// duration in seconds and an optional acoustic-domain tag.
struct EmbeddingRecord {
  std::string id;
  VectorXd vector;
  double duration_s = 0.0;
  std::string domain;  // empty = unknown
};

/// Immutable collection of embeddings sharing one dimension. Vectors are
/// stored column-wise so cohort scoring reduces to one matrix product.
class EmbeddingSet {
 public:
  EmbeddingSet() = default;

  /// Builds a set from records, validating dimension consistency, positive
  /// durations, finiteness and id uniqueness. `declared_dim` pins the
  /// dimension for empty sets; for nonempty input it must match.
  static EmbeddingSet from_records(const std::vector<EmbeddingRecord>& records,
                                   Index declared_dim = -1);

  Index dim() const { return dim_; }
  Index size() const { return static_cast<Index>(ids_.size()); }
  bool empty() const { return ids_.empty(); }

  bool contains(const std::string& id) const { return index_.count(id) > 0; }
  Index index_of(const std::string& id) const;

  const std::string& id(Index i) const { return ids_[static_cast<size_t>(i)]; }
  const std::string& domain(Index i) const { return domains_[static_cast<size_t>(i)]; }
  double duration(Index i) const { return durations_[i]; }
  auto vector(Index i) const { return vectors_.col(i); }
  EmbeddingRecord record(Index i) const;

  const MatrixXd& vectors() const { return vectors_; }  // dim x size
  const VectorXd& durations() const { return durations_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<std::string>& domains() const { return domains_; }

 private:
  Index dim_ = 0;
  MatrixXd vectors_;
  VectorXd durations_;
  std::vector<std::string> ids_;
  std::vector<std::string> domains_;
  std::unordered_map<std::string, Index> index_;
};

enum class Label { target, nontarget, unlabeled };

/// Directed (enrollment, test) comparison.
struct Trial {
  std::string enroll_id;
  std::string test_id;
  Label label = Label::unlabeled;
  std::string domain;  // empty = unknown
};

/// Ordered trial sequence with derived label tallies. Duplicate
/// (enroll, test) pairs are rejected, not deduplicated.
class TrialList {
 public:
  TrialList() = default;
  static TrialList from_trials(std::vector<Trial> trials);

  Index size() const { return static_cast<Index>(trials_.size()); }
  bool empty() const { return trials_.empty(); }
  const Trial& operator[](Index i) const { return trials_[static_cast<size_t>(i)]; }

  auto begin() const { return trials_.begin(); }
  auto end() const { return trials_.end(); }

  Index n_target() const { return n_target_; }
  Index n_nontarget() const { return n_nontarget_; }
  Index n_unlabeled() const { return n_unlabeled_; }
  bool fully_labeled() const { return n_unlabeled_ == 0; }

 private:
  std::vector<Trial> trials_;
  Index n_target_ = 0;
  Index n_nontarget_ = 0;
  Index n_unlabeled_ = 0;
};

/// Per-trial scores aligned index-for-index with a TrialList, tagged with
/// the pipeline stage that produced them.
struct ScoreSet {
  VectorXd scores;
  std::string stage;
};

/// Validates alignment and finiteness; throws Error on violation.
ScoreSet make_score_set(VectorXd scores, std::string stage, const TrialList& trials);

/// Throws Error unless `scores` is aligned with `trials` and all-finite.
void check_aligned(const TrialList& trials, const ScoreSet& scores);

}  // namespace svcal
