// ============================================================================
// adl/messages_demo.hpp -- anonymised messages demonstration
// ============================================================================
//
// Three authors (Bob, Alice, Jeff) write messages with independent chances
// of using an emoji, capitalising the first word, and being positive.  Each
// author's conversed_with role relates them uniformly to the two others.
//
// Two experiments:
//   prediction  sample a set of k messages from an author and pick the most
//               likely author from all three candidates;
//   learning    start from a model where every tendency is 0.5 and learn
//               the tendencies from observations of message sets received
//               by each author, without being told who sent them.
// ============================================================================

#ifndef ADL_MESSAGES_DEMO_HPP
#define ADL_MESSAGES_DEMO_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adl/belief_model.hpp"
#include "adl/formula.hpp"
#include "adl/learning.hpp"
#include "adl/random.hpp"

namespace adl::demo {

inline constexpr std::array<std::string_view, 3> kAuthors = {"Bob", "Alice",
                                                             "Jeff"};
// Literal order inside each message conjunction.
inline constexpr std::array<std::string_view, 3> kProperties = {
    "uses_emoji", "capitalises_first_word", "is_positive"};
inline constexpr std::string_view kRole = "conversed_with";
// Recipient whose role covers every author uniformly; used for prediction.
inline constexpr std::string_view kAnonymous = "Anonymous";

struct Message {
  bool uses_emoji = false;
  bool capitalises_first_word = false;
  bool is_positive = false;

  friend bool operator==(const Message&, const Message&) = default;
};

BeliefModel ground_truth_model();

// Ground truth plus kAnonymous, whose conversed_with is 1/3 on each author.
BeliefModel prediction_model();

// Every tendency 0.5, ground-truth roles, and a statistical concept strategy
// on all nine tendencies.
BeliefModel learning_model(double decay_rate, double decay_rate_for_decay_rate);

std::vector<Message> sample_message_set(const BeliefModel& model,
                                        std::string_view author, std::size_t k,
                                        Rng& rng);

// uses_emoji & capitalises_first_word & is_positive, each negated when false.
Formula message_to_formula(const Message& m);
// [conversed_with](m1 & m2 & ...)
Formula message_set_to_formula(std::span<const Message> messages);

struct Prediction {
  IndividualId author;
  std::vector<TargetWeight> posterior;
};

// Posterior over the recipient's conversed_with for the message set; ties go
// to the lexicographically smallest name.
Prediction predict_author(const BeliefModel& model, std::string_view recipient,
                          std::span<const Message> messages);

struct AccuracyCell {
  std::string author;
  std::size_t k;
  std::size_t n;
  double accuracy_pct;
};

struct PredictionReport {
  std::uint64_t seed;
  std::vector<AccuracyCell> cells;  // author-major, k ascending
};

PredictionReport run_prediction_experiment(std::size_t n_sets_per_cell,
                                           std::size_t k_min, std::size_t k_max,
                                           std::uint64_t seed);

struct LearningConfig {
  std::size_t trials = 30;
  std::size_t observations_per_trial = 500;
  std::size_t min_messages = 2;
  std::size_t max_messages = 4;
  double decay_rate = 0.95;
  double decay_rate_for_decay_rate = 0.95;
  std::uint64_t seed = 1;
};

struct LearntTendency {
  std::string author;
  std::string concept_name;
  double mean_pct;
  double std_pct;  // sample standard deviation across trials
  double truth_pct;
};

struct LearningReport {
  LearningConfig config;
  std::vector<LearntTendency> tendencies;  // author-major, kProperties order
  // True when every role in every final model equals the ground truth.
  bool roles_untouched = true;
};

LearningReport run_learning_experiment(const LearningConfig& config);

// CSV with header author,k,n,accuracy_pct.
std::string accuracy_csv(const PredictionReport& report);
// CSV with header author,concept,mean_pct,std_pct,truth_pct.
std::string learnt_csv(const LearningReport& report);

}  // namespace adl::demo

#endif  // ADL_MESSAGES_DEMO_HPP
