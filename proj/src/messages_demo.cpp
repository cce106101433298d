#include "adl/messages_demo.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "adl/evaluator.hpp"

namespace adl::demo {

namespace {

struct Tendencies {
  double uses_emoji;
  double capitalises_first_word;
  double is_positive;
};

// Ground-truth writing tendencies, kAuthors order.
constexpr std::array<Tendencies, 3> kTruth = {{
    {0.90, 0.40, 0.15},  // Bob
    {0.10, 0.80, 0.40},  // Alice
    {0.50, 0.50, 0.50},  // Jeff
}};

std::vector<RoleEntry> others_of(std::size_t i) {
  std::vector<RoleEntry> entries;
  for (std::size_t j = 0; j < kAuthors.size(); ++j) {
    if (j != i) entries.push_back({std::string(kAuthors[j]), 0.5});
  }
  return entries;
}

void declare_authors(ModelBuilder& b, bool truth) {
  for (std::size_t i = 0; i < kAuthors.size(); ++i) {
    const Tendencies t = truth ? kTruth[i] : Tendencies{0.5, 0.5, 0.5};
    b.individual(std::string(kAuthors[i]))
        .constant("uses_emoji", t.uses_emoji)
        .constant("capitalises_first_word", t.capitalises_first_word)
        .constant("is_positive", t.is_positive)
        .role(std::string(kRole), others_of(i));
  }
}

Formula literal(std::string_view property, bool value) {
  Formula atom = Formula::atom(std::string(property));
  return value ? atom : negation(atom);
}

std::string format_pct(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

BeliefModel ground_truth_model() {
  ModelBuilder b;
  declare_authors(b, true);
  return b.build();
}

BeliefModel prediction_model() {
  ModelBuilder b;
  declare_authors(b, true);
  std::vector<RoleEntry> everyone;
  for (std::string_view a : kAuthors) everyone.push_back({std::string(a), 1.0 / 3.0});
  b.individual(std::string(kAnonymous)).role(std::string(kRole), everyone);
  return b.build();
}

BeliefModel learning_model(double decay_rate, double decay_rate_for_decay_rate) {
  ModelBuilder b;
  declare_authors(b, false);
  BeliefModel model = b.build();
  for (std::string_view author : kAuthors) {
    for (std::string_view property : kProperties) {
      StatisticalConceptStrategy s;
      s.decay_rate = decay_rate;
      s.decay_rate_for_decay_rate = decay_rate_for_decay_rate;
      model.concept_slot(author, property).learning = s;
    }
  }
  model.validate();
  return model;
}

std::vector<Message> sample_message_set(const BeliefModel& model,
                                        std::string_view author, std::size_t k,
                                        Rng& rng) {
  if (k == 0) throw std::invalid_argument("a message set needs k >= 1");
  const double emoji = model.get_concept(author, kProperties[0]);
  const double caps = model.get_concept(author, kProperties[1]);
  const double positive = model.get_concept(author, kProperties[2]);
  std::vector<Message> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Message m;
    m.uses_emoji = rng.bernoulli(emoji);
    m.capitalises_first_word = rng.bernoulli(caps);
    m.is_positive = rng.bernoulli(positive);
    out.push_back(m);
  }
  return out;
}

Formula message_to_formula(const Message& m) {
  return conjunction(conjunction(literal(kProperties[0], m.uses_emoji),
                                 literal(kProperties[1], m.capitalises_first_word)),
                     literal(kProperties[2], m.is_positive));
}

Formula message_set_to_formula(std::span<const Message> messages) {
  if (messages.empty()) throw std::invalid_argument("empty message set");
  Formula body = message_to_formula(messages.front());
  for (const Message& m : messages.subspan(1)) {
    body = conjunction(std::move(body), message_to_formula(m));
  }
  return expect(std::string(kRole), std::move(body));
}

Prediction predict_author(const BeliefModel& model, std::string_view recipient,
                          std::span<const Message> messages) {
  const Formula obs = message_set_to_formula(messages);
  const auto& e = *obs.as<node::Expectation>();
  const ModelContext ctx(model, std::string(recipient));
  Prediction p;
  p.posterior = role_selection_posterior(ctx, ctx.role(kRole), e.body,
                                         e.condition, 1.0);
  const TargetWeight* best = nullptr;
  for (const TargetWeight& tw : p.posterior) {
    if (!best || tw.weight > best->weight ||
        (tw.weight == best->weight && tw.target < best->target)) {
      best = &tw;
    }
  }
  if (best) p.author = best->target;
  return p;
}

PredictionReport run_prediction_experiment(std::size_t n_sets_per_cell,
                                           std::size_t k_min, std::size_t k_max,
                                           std::uint64_t seed) {
  if (n_sets_per_cell == 0 || k_min == 0 || k_max < k_min) {
    throw std::invalid_argument("need n >= 1 and 1 <= k_min <= k_max");
  }
  const BeliefModel model = prediction_model();
  PredictionReport report{seed, {}};
  std::uint64_t cell_index = 0;
  for (std::string_view author : kAuthors) {
    for (std::size_t k = k_min; k <= k_max; ++k) {
      Rng rng = Rng::stream(seed, cell_index++);
      std::size_t correct = 0;
      for (std::size_t i = 0; i < n_sets_per_cell; ++i) {
        const auto messages = sample_message_set(model, author, k, rng);
        if (predict_author(model, kAnonymous, messages).author == author) {
          ++correct;
        }
      }
      report.cells.push_back(
          {std::string(author), k, n_sets_per_cell,
           100.0 * static_cast<double>(correct) /
               static_cast<double>(n_sets_per_cell)});
    }
  }
  return report;
}

LearningReport run_learning_experiment(const LearningConfig& config) {
  if (config.trials == 0 || config.min_messages == 0 ||
      config.max_messages < config.min_messages) {
    throw std::invalid_argument("need trials >= 1 and 1 <= min <= max messages");
  }
  const BeliefModel truth = ground_truth_model();
  const std::size_t n_props = kProperties.size();
  // samples[author][property][trial]
  std::vector<std::vector<std::vector<double>>> samples(
      kAuthors.size(), std::vector<std::vector<double>>(n_props));
  LearningReport report;
  report.config = config;

  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    Rng rng = Rng::stream(config.seed, trial);
    BeliefModel model =
        learning_model(config.decay_rate, config.decay_rate_for_decay_rate);
    for (std::size_t obs = 0; obs < config.observations_per_trial; ++obs) {
      const std::string_view recipient = kAuthors[rng.index(kAuthors.size())];
      const RoleDistribution& role = truth.get_role(recipient, kRole);
      const double u = rng.uniform();
      double acc = 0.0;
      std::string sender;
      for (const RoleEntry& e : role.entries()) {
        if (!e.target) continue;
        acc += e.weight;
        sender = *e.target;
        if (u < acc) break;
      }
      const std::size_t k =
          config.min_messages +
          rng.index(config.max_messages - config.min_messages + 1);
      const auto messages = sample_message_set(truth, sender, k, rng);
      observe(model, recipient, message_set_to_formula(messages));
    }
    for (std::size_t a = 0; a < kAuthors.size(); ++a) {
      for (std::size_t p = 0; p < n_props; ++p) {
        samples[a][p].push_back(model.get_concept(kAuthors[a], kProperties[p]));
      }
      if (!(model.get_role(kAuthors[a], kRole) == truth.get_role(kAuthors[a], kRole))) {
        report.roles_untouched = false;
      }
    }
  }

  for (std::size_t a = 0; a < kAuthors.size(); ++a) {
    for (std::size_t p = 0; p < n_props; ++p) {
      const auto& xs = samples[a][p];
      double mean = 0.0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      double var = 0.0;
      for (double x : xs) var += (x - mean) * (x - mean);
      const double sd =
          xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
      report.tendencies.push_back(
          {std::string(kAuthors[a]), std::string(kProperties[p]), 100.0 * mean,
           100.0 * sd, 100.0 * truth.get_concept(kAuthors[a], kProperties[p])});
    }
  }
  return report;
}

std::string accuracy_csv(const PredictionReport& report) {
  std::string out = "author,k,n,accuracy_pct\n";
  for (const AccuracyCell& c : report.cells) {
    out += c.author + ',' + std::to_string(c.k) + ',' + std::to_string(c.n) +
           ',' + format_pct(c.accuracy_pct) + '\n';
  }
  return out;
}

std::string learnt_csv(const LearningReport& report) {
  std::string out = "author,concept,mean_pct,std_pct,truth_pct\n";
  for (const LearntTendency& t : report.tendencies) {
    out += t.author + ',' + t.concept_name + ',' + format_pct(t.mean_pct) + ',' +
           format_pct(t.std_pct) + ',' + format_pct(t.truth_pct) + '\n';
  }
  return out;
}

}  // namespace adl::demo
