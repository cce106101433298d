// adl -- command-line front end for evaluation, observation, validation and
// the messages demonstration.
//
// Exit codes: 0 ok, 1 parse error, 2 model error, 3 resolution error,
// 4 I/O error.  Diagnostics go to stderr.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "adl/belief_model.hpp"
#include "adl/errors.hpp"
#include "adl/evaluator.hpp"
#include "adl/learning.hpp"
#include "adl/messages_demo.hpp"
#include "adl/parser.hpp"

namespace {

enum Exit : int { kOk = 0, kParse = 1, kModel = 2, kResolution = 3, kIo = 4 };

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw adl::IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw adl::IoError("failed writing '" + path + "'");
}

struct Options {
  std::string model;
  std::string individual;
  std::string query;
  std::string out;
  double likelihood = 1.0;
  double learning_rate = 1.0;
  std::uint64_t seed = 1;
  std::size_t n = 10000;
  std::size_t trials = 30;
  std::size_t observations = 500;
};

int cmd_eval(const Options& o) {
  const adl::Formula query = adl::parse(o.query);
  const adl::BeliefModel model = adl::load_model_file(o.model);
  const adl::ModelContext ctx(model, o.individual);
  std::printf("%.6f\n", adl::evaluate(ctx, query));
  return kOk;
}

int cmd_observe(const Options& o) {
  const adl::Formula obs = adl::parse(o.query);
  adl::BeliefModel model = adl::load_model_file(o.model);
  if (!model.contains(o.individual)) {
    throw adl::ResolutionError("unknown individual '" + o.individual + "'");
  }
  const adl::ObservationReport report =
      adl::observe(model, o.individual, obs, {o.likelihood, o.learning_rate});
  adl::save_model_file(model, o.out);
  std::cout << adl::to_string(report);
  return kOk;
}

int cmd_validate(const Options& o) {
  const adl::BeliefModel model = adl::load_model_file(o.model);
  std::cout << "ok: " << model.individuals().size() << " individuals\n";
  return kOk;
}

int cmd_predict(const Options& o) {
  const auto report = adl::demo::run_prediction_experiment(o.n, 1, 10, o.seed);
  write_text(o.out, adl::demo::accuracy_csv(report));
  return kOk;
}

int cmd_learn(const Options& o) {
  adl::demo::LearningConfig config;
  config.trials = o.trials;
  config.observations_per_trial = o.observations;
  config.seed = o.seed;
  const auto report = adl::demo::run_learning_experiment(config);
  write_text(o.out, adl::demo::learnt_csv(report));
  return kOk;
}

int run_guarded(int (*cmd)(const Options&), const Options& o) {
  try {
    return cmd(o);
  } catch (const adl::ParseError& e) {
    std::cerr << "adl: " << e.what() << '\n';
    return kParse;
  } catch (const adl::ModelError& e) {
    std::cerr << "adl: model error: " << e.what() << '\n';
    return kModel;
  } catch (const adl::ResolutionError& e) {
    std::cerr << "adl: " << e.what() << '\n';
    return kResolution;
  } catch (const adl::IoError& e) {
    std::cerr << "adl: " << e.what() << '\n';
    return kIo;
  } catch (const adl::FormulaError& e) {
    // Only reachable through malformed query text.
    std::cerr << "adl: " << e.what() << '\n';
    return kParse;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aleatoric description logic: evaluate, observe and learn"};
  app.require_subcommand(1);
  Options o;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("-m,--model", o.model, "model file (JSON)")->required();
  };

  CLI::App* eval = app.add_subcommand("eval", "probability of a sentence");
  add_model(eval);
  eval->add_option("-i,--individual", o.individual, "evaluation context")
      ->required();
  eval->add_option("-q,--query", o.query, "sentence")->required();

  CLI::App* observe =
      app.add_subcommand("observe", "learn from an observed sentence");
  add_model(observe);
  observe->add_option("-i,--individual", o.individual, "observed individual")
      ->required();
  observe->add_option("-q,--query", o.query, "observed sentence")->required();
  observe->add_option("-o,--out", o.out, "where to write the updated model")
      ->required();
  observe->add_option("--likelihood", o.likelihood, "chance the sentence holds")
      ->check(CLI::Range(0.0, 1.0));
  observe->add_option("--learning-rate", o.learning_rate, "overall rate")
      ->check(CLI::Range(0.0, 1.0));

  CLI::App* validate = app.add_subcommand("validate", "check a model file");
  add_model(validate);

  CLI::App* demo = app.add_subcommand("demo", "anonymised messages experiments");
  demo->require_subcommand(1);
  CLI::App* predict = demo->add_subcommand("predict", "author prediction accuracy");
  predict->add_option("--n", o.n, "message sets per (author, k) cell")
      ->check(CLI::PositiveNumber);
  CLI::App* learn = demo->add_subcommand("learn", "learn writing tendencies");
  learn->add_option("--trials", o.trials, "independent trials")
      ->check(CLI::PositiveNumber);
  learn->add_option("--observations", o.observations, "observations per trial")
      ->check(CLI::PositiveNumber);
  for (CLI::App* sub : {predict, learn}) {
    sub->add_option("--seed", o.seed, "master seed")->envname("ADL_SEED");
    sub->add_option("-o,--out", o.out, "CSV path (stdout if omitted)");
  }

  CLI11_PARSE(app, argc, argv);

  if (*eval) return run_guarded(cmd_eval, o);
  if (*observe) return run_guarded(cmd_observe, o);
  if (*validate) return run_guarded(cmd_validate, o);
  if (*predict) return run_guarded(cmd_predict, o);
  return run_guarded(cmd_learn, o);
}
