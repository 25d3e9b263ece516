#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "streambench/bench.hpp"

using namespace streambench;

namespace {

std::string temp_path(const std::string& name) {
    return std::string("/tmp/streambench_test_") + name;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

BenchConfig small_config(const std::string& classifier) {
    BenchConfig config;
    config.dataset = parse_dataset_spec("synth:hyperplane,seed=3,n=2000");
    config.classifier = {classifier, {}};
    config.repetitions = 2;
    config.base_seed = 7;
    config.max_workers = 2;
    return config;
}

}  // namespace

TEST_SUITE("bench") {
    TEST_CASE("dataset spec parsing") {
        const DatasetSpec synth = parse_dataset_spec("synth:randomtree,seed=5,n=1000,depth=3");
        CHECK(synth.synthetic);
        CHECK(synth.generator.kind == GeneratorKind::randomtree);
        CHECK(synth.generator.seed == 5);
        CHECK(synth.generator.length == 1000);
        CHECK(synth.generator.tree_depth == 3);

        const DatasetSpec file = parse_dataset_spec("/tmp/data.csv");
        CHECK_FALSE(file.synthetic);
        CHECK(file.path == "/tmp/data.csv");

        CHECK_THROWS_AS(parse_dataset_spec("synth:nosuch"), UsageError);
        CHECK_THROWS_AS(parse_dataset_spec("synth:hyperplane,bogus=1"), UsageError);
        CHECK_THROWS_AS(parse_dataset_spec(""), UsageError);
    }

    TEST_CASE("classifier registry rejects unknown names and parameters") {
        StreamSpec spec{3, 2, 0};
        CHECK_THROWS_AS(make_classifier({"nope", {}}, spec, 1), UsageError);
        CHECK_THROWS_AS(make_classifier({"nb", {{"bogus", "1"}}}, spec, 1), UsageError);
        CHECK_THROWS_AS(make_classifier({"mf", {{"trees", "abc"}}}, spec, 1), UsageError);
        for (const std::string& name : {"nb", "ht", "mf", "mcnn-origin", "mcnn-orpaillecc",
                                        "fnn", "empty"}) {
            auto clf = make_classifier({name, {}}, spec, 1);
            CHECK(clf != nullptr);
        }
    }

    TEST_CASE("repeated run_bench invocations are bit-identical") {
        BenchConfig config = small_config("mf");
        config.classifier.params = {{"trees", "3"}, {"mem_kb", "60"}};

        std::ostringstream t1, t2, s1, s2;
        const BenchResult a = run_bench(config);
        const BenchResult b = run_bench(config);
        write_timeline_csv(t1, a.reports);
        write_timeline_csv(t2, b.reports);
        CHECK(t1.str() == t2.str());
        CHECK(a.summary.final_f1_mean == b.summary.final_f1_mean);
        CHECK(a.summary.final_f1_std == b.summary.final_f1_std);
        CHECK(a.summary.peak_memory_bytes == b.summary.peak_memory_bytes);
    }

    TEST_CASE("worker count does not change the results") {
        BenchConfig config = small_config("mf");
        config.classifier.params = {{"trees", "3"}, {"mem_kb", "60"}};
        config.repetitions = 4;
        config.max_workers = 1;
        const BenchResult serial = run_bench(config);
        config.max_workers = 4;
        const BenchResult parallel = run_bench(config);
        std::ostringstream a, b;
        write_timeline_csv(a, serial.reports);
        write_timeline_csv(b, parallel.reports);
        CHECK(a.str() == b.str());
    }

    TEST_CASE("reps=1 summary has zero std") {
        BenchConfig config = small_config("nb");
        config.repetitions = 1;
        const BenchResult result = run_bench(config);
        CHECK(result.summary.reps == 1);
        CHECK(result.summary.final_f1_std == 0.0);
    }

    TEST_CASE("deterministic classifiers repeat exactly across repetitions") {
        BenchConfig config = small_config("nb");
        config.repetitions = 3;
        const BenchResult result = run_bench(config);
        CHECK(result.reports[0].final_macro_f1 == result.reports[1].final_macro_f1);
        CHECK(result.reports[0].final_macro_f1 == result.reports[2].final_macro_f1);
        CHECK(result.summary.final_f1_std < 1e-12);  // identical values, mean rounding only
    }

    TEST_CASE("timeline and summary CSV formats") {
        BenchConfig config = small_config("nb");
        config.repetitions = 1;
        const BenchResult result = run_bench(config);
        std::ostringstream timeline, summary;
        write_timeline_csv(timeline, result.reports);
        write_summary_csv(summary, result.summary);

        std::string line;
        std::istringstream tin(timeline.str());
        std::getline(tin, line);
        CHECK(line == "classifier,dataset,seed,elements,macro_f1,memory_bytes");
        std::getline(tin, line);
        CHECK(line.rfind("nb,\"synth:hyperplane,seed=3,n=2000\",7,50,", 0) == 0);
        int rows = 1;
        while (std::getline(tin, line))
            if (!line.empty()) ++rows;
        CHECK(rows == 2000 / 50);

        std::istringstream sin(summary.str());
        std::getline(sin, line);
        CHECK(line ==
              "classifier,dataset,reps,final_f1_mean,final_f1_std,runtime_s_mean,"
              "net_runtime_s_mean,peak_memory_bytes");
        std::getline(sin, line);
        CHECK(line.rfind("nb,\"synth:hyperplane,seed=3,n=2000\",1,", 0) == 0);
    }

    TEST_CASE("drift wrapper matches the vector-level inject_drift") {
        BenchConfig config = small_config("nb");
        config.drift = DriftConfig{-1, 1};  // midpoint
        auto drifted = make_source(config, 0);

        config.drift.reset();
        auto plain_src = make_source(config, 0);
        auto plain = materialize(*plain_src);
        const auto expected = inject_drift(plain, DriftConfig{1000, 1}, 2);

        std::size_t i = 0;
        while (auto x = drifted->next()) {
            CHECK(*x->label == *expected[i].label);
            ++i;
        }
        CHECK(i == expected.size());
    }

    TEST_CASE("file datasets stream with O(window) loader overhead") {
        const std::string small = temp_path("small.csv");
        const std::string large = temp_path("large.csv");
        std::ostringstream content;
        content << "f0,f1,label\n";
        for (int i = 0; i < 50; ++i) content << i * 0.25 << "," << -i * 0.5 << "," << i % 3 << "\n";
        write_file(small, content.str());
        for (int i = 0; i < 5000; ++i) content << i * 0.125 << "," << i * 0.5 << "," << i % 3 << "\n";
        write_file(large, content.str());

        const CsvInfo info_small = prescan_csv(small);
        const CsvInfo info_large = prescan_csv(large);
        FeatureCsvSource a(small, info_small);
        FeatureCsvSource b(large, info_large);
        while (a.next()) {}
        while (b.next()) {}
        // overhead tracks the row width, not the file length
        CHECK(a.overhead_bytes() < 4096);
        CHECK(b.overhead_bytes() < 4096);
        CHECK(b.overhead_bytes() <= a.overhead_bytes() + 64);

        std::remove(small.c_str());
        std::remove(large.c_str());
    }

    TEST_CASE("sparse file labels are remapped to a dense range") {
        const std::string path = temp_path("sparse.csv");
        write_file(path, "f0,label\n1.0,10\n2.0,30\n3.0,20\n4.0,10\n");
        const CsvInfo info = prescan_csv(path);
        CHECK(info.labels.num_classes() == 3);
        CHECK(info.labels.dense_to_raw == std::vector<Label>{10, 20, 30});
        FeatureCsvSource source(path, info);
        std::vector<Label> seen;
        while (auto x = source.next()) seen.push_back(*x->label);
        CHECK(seen == std::vector<Label>{0, 2, 1, 0});
        std::remove(path.c_str());
    }

    TEST_CASE("malformed CSV rows name the offending line") {
        const std::string path = temp_path("bad.csv");
        write_file(path, "f0,f1,label\n1.0,2.0,0\noops,3.0,1\n");
        try {
            prescan_csv(path);
            FAIL("expected a data error");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find(":3:") != std::string::npos);
        }
        std::remove(path.c_str());
    }

    TEST_CASE("raw sample files run through the windowed pipeline") {
        const std::string path = temp_path("raw.csv");
        std::ostringstream content;
        content << "a0,a1,label\n";
        // 120 samples -> 2 windows of 50, 20 dropped
        for (int i = 0; i < 120; ++i)
            content << (i < 60 ? 1.0 : 5.0) << "," << 0.5 << "," << (i < 60 ? 0 : 4) << "\n";
        write_file(path, content.str());

        const CsvInfo info = prescan_csv(path);
        CHECK(info.raw);
        WindowedCsvSource source(path, info, FeaturePipeline::meanstd, 50, 20);
        const StreamSpec spec = source.spec();
        CHECK(spec.dimensionality == 4);  // 2 axes x (mean, std)
        CHECK(spec.num_classes == 2);     // labels {0,4} remapped

        auto first = source.next();
        auto second = source.next();
        REQUIRE(first.has_value());
        REQUIRE(second.has_value());
        CHECK_FALSE(source.next().has_value());
        CHECK(first->features[0] == doctest::Approx(1.0));
        CHECK(*first->label == 0);
        CHECK(*second->label == 1);  // raw label 4 -> dense 1 (majority of window 2)
        std::remove(path.c_str());
    }

    TEST_CASE("tune_grid returns the dominant point and emits one row per point") {
        BenchConfig config = small_config("fnn");
        config.repetitions = 1;
        config.dataset = parse_dataset_spec("synth:hyperplane,seed=3,n=1500,noise=0");
        std::vector<GridAxis> grid{{"lr", {"0.0", "0.5"}}};
        std::ostringstream grid_csv;
        const TuneResult result = tune_grid(config, grid, &grid_csv);
        CHECK(result.best.params.at("lr") == "0.5");  // lr 0 cannot learn

        std::istringstream in(grid_csv.str());
        std::string line;
        std::getline(in, line);
        CHECK(line == "classifier,dataset,params,final_macro_f1");
        int rows = 0;
        while (std::getline(in, line))
            if (!line.empty()) ++rows;
        CHECK(rows == 2);

        // singleton grid returns that point
        std::vector<GridAxis> singleton{{"lr", {"0.25"}}};
        const TuneResult single = tune_grid(config, singleton, nullptr);
        CHECK(single.best.params.at("lr") == "0.25");

        CHECK_THROWS_AS(parse_grid(""), UsageError);
    }

    TEST_CASE("knn-offline follows the split protocol and scores well on easy data") {
        BenchConfig config;
        config.dataset = parse_dataset_spec("synth:randomrbf,seed=5,n=3000,spread=0.02");
        config.classifier = {"knn-offline", {}};
        config.repetitions = 1;
        const BenchResult result = run_bench(config);
        CHECK(result.summary.final_f1_mean > 0.95);
        // evaluation covers ~90% of the stream
        CHECK(result.reports[0].elements > 2500);
        CHECK(result.reports[0].elements < 2750);
    }
}
