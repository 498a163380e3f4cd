#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <temporal/temporal.h>

#include "synth.hpp"

namespace fs = std::filesystem;

namespace {

std::string capi_inputs(const std::string& name, const std::string& extra = "") {
  std::string dir = "capi_tmp/" + name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  synth::write_corpus_file(dir + "/corpus.conllu", synth::CorpusSpec{});
  synth::write_lexicons(dir);
  synth::write_gold(dir + "/gold.tsv");
  synth::write_config(dir + "/run.conf", dir, extra);
  return dir;
}

}  // namespace

TEST_CASE("stage names are NULL-terminated and in pipeline order") {
  const char* const* names = te_stage_names();
  REQUIRE(names != nullptr);
  int n = 0;
  while (names[n]) ++n;
  CHECK(n == 11);
  CHECK(std::strcmp(names[0], "mine-lexicon") == 0);
  CHECK(std::strcmp(names[n - 1], "export-graph") == 0);
}

TEST_CASE("version string is present") {
  REQUIRE(te_version() != nullptr);
  CHECK(std::strlen(te_version()) > 0);
}

TEST_CASE("open failures return NULL and report through te_last_open_error") {
  te_session* s = te_session_open("capi_tmp/no-such-config.conf", "capi_tmp/x");
  CHECK(s == nullptr);
  REQUIRE(te_last_open_error() != nullptr);
  CHECK(std::string(te_last_open_error()).find("no-such-config") !=
        std::string::npos);

  fs::create_directories("capi_tmp");
  {
    std::ofstream out("capi_tmp/broken.conf");
    out << "definitely_not_a_key = 1\n";
  }
  CHECK(te_session_open("capi_tmp/broken.conf", "capi_tmp/x") == nullptr);
  CHECK(std::string(te_last_open_error()).find("definitely_not_a_key") !=
        std::string::npos);
}

TEST_CASE("session runs stages and reports per-call errors") {
  std::string dir = capi_inputs("run", "epochs = 2\n");
  std::string run_dir = dir + "/run";
  te_session* s = te_session_open((dir + "/run.conf").c_str(), run_dir.c_str());
  REQUIRE(s != nullptr);

  CHECK(te_session_set_seed(s, 7) == TE_OK);
  CHECK(te_session_set_threads(s, 2) == TE_OK);
  CHECK(te_session_set_threads(s, 0) == TE_ERR_USAGE);

  // data error: seeds before mine-pairs
  CHECK(te_session_run(s, "seeds") == TE_ERR_DATA);
  REQUIRE(te_session_error(s) != nullptr);
  CHECK(std::string(te_session_error(s)).find("mine-pairs") != std::string::npos);

  // usage errors: unknown stage, NULL arguments
  CHECK(te_session_run(s, "fold-laundry") == TE_ERR_USAGE);
  CHECK(te_session_run(s, nullptr) == TE_ERR_USAGE);
  CHECK(te_session_run(nullptr, "seeds") == TE_ERR_USAGE);

  CHECK(te_session_run(s, "mine-pairs") == TE_OK);
  CHECK(te_session_run(s, "seeds") == TE_OK);
  CHECK(fs::exists(run_dir + "/pairs_0.tsv"));
  CHECK(fs::exists(run_dir + "/candidates.tsv"));

  // a successful call clears the error slot
  CHECK(std::string(te_session_error(s)).empty());

  te_session_close(s);
  te_session_close(nullptr);  // harmless
}

TEST_CASE("full stage chain through the C surface") {
  std::string dir =
      capi_inputs("chain", "epochs = 2\ngraph_source = pairs_0.tsv\n");
  std::string run_dir = dir + "/run";
  te_session* s = te_session_open((dir + "/run.conf").c_str(), run_dir.c_str());
  REQUIRE(s != nullptr);
  for (const char* stage : {"mine-pairs", "seeds", "build-instances", "train",
                            "predict", "score", "export-graph"}) {
    CAPTURE(stage);
    CHECK(te_session_run(s, stage) == TE_OK);
  }
  CHECK(fs::exists(run_dir + "/score.json"));
  CHECK(fs::exists(run_dir + "/graph.json"));
  te_session_close(s);
}
