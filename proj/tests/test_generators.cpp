#include "doctest.h"

#include <set>

#include "streambench/generators.hpp"

using namespace streambench;

TEST_SUITE("generators") {
    TEST_CASE("hyperplane default shape: 200k instances, 3 features, 2 classes") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::hyperplane;
        const StreamSpec s = spec.stream_spec();
        CHECK(s.dimensionality == 3);
        CHECK(s.num_classes == 2);
        CHECK(spec.length == 200000);

        spec.length = 5000;
        const auto data = generate(spec);
        CHECK(data.size() == 5000);
        for (const auto& x : data) {
            CHECK(x.features.size() == 3);
            for (double f : x.features) {
                CHECK(f >= 0.0);
                CHECK(f < 1.0);
            }
            CHECK(*x.label >= 0);
            CHECK(*x.label <= 1);
        }
    }

    TEST_CASE("noise-free hyperplane labels follow the plane; balance is ~50%") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::hyperplane;
        spec.weights = {1.0, 0.0, 0.0};
        spec.threshold = 0.5;
        spec.noise = 0.0;
        spec.length = 50000;
        spec.seed = 7;
        const auto data = generate(spec);
        std::int64_t ones = 0;
        for (const auto& x : data) {
            const Label expected = x.features[0] >= 0.5 ? 1 : 0;
            CHECK(*x.label == expected);
            ones += *x.label;
        }
        const double balance = static_cast<double>(ones) / static_cast<double>(data.size());
        CHECK(balance > 0.49);
        CHECK(balance < 0.51);
    }

    TEST_CASE("hyperplane noise flips roughly the configured fraction") {
        GeneratorSpec clean;
        clean.kind = GeneratorKind::hyperplane;
        clean.noise = 0.0;
        clean.length = 20000;
        GeneratorSpec noisy = clean;
        noisy.noise = 0.05;
        const auto a = generate(clean);
        const auto b = generate(noisy);
        std::int64_t flips = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].features == b[i].features);  // same feature stream
            if (*a[i].label != *b[i].label) ++flips;
        }
        const double rate = static_cast<double>(flips) / static_cast<double>(a.size());
        CHECK(rate > 0.04);
        CHECK(rate < 0.06);
    }

    TEST_CASE("randomrbf has a slight imbalance toward class 1") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::randomrbf;
        spec.length = 200000;
        const auto data = generate(spec);
        std::int64_t ones = 0;
        for (const auto& x : data) ones += *x.label;
        const double freq = static_cast<double>(ones) / static_cast<double>(data.size());
        CHECK(freq >= 0.55);
        CHECK(freq <= 0.65);
    }

    TEST_CASE("randomrbf with zero spread emits centroids exactly") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::randomrbf;
        spec.spread = 0.0;
        spec.length = 500;
        RandomRbfGenerator gen(spec);
        std::set<std::vector<double>> centers;
        for (const auto& c : gen.centroids()) centers.insert(c.center);
        while (auto x = gen.next()) CHECK(centers.count(x->features) == 1);
    }

    TEST_CASE("same seed twice yields a bit-identical stream") {
        for (GeneratorKind kind :
             {GeneratorKind::hyperplane, GeneratorKind::randomrbf, GeneratorKind::randomtree}) {
            GeneratorSpec spec;
            spec.kind = kind;
            spec.length = 2000;
            spec.seed = 99;
            const auto a = generate(spec);
            const auto b = generate(spec);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].features == b[i].features);
                CHECK(*a[i].label == *b[i].label);
            }
        }
    }

    TEST_CASE("reset rewinds a generator to the identical stream") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::randomrbf;
        spec.length = 300;
        RandomRbfGenerator gen(spec);
        std::vector<Instance> first;
        while (auto x = gen.next()) first.push_back(*x);
        gen.reset();
        std::size_t i = 0;
        while (auto x = gen.next()) {
            CHECK(x->features == first[i].features);
            ++i;
        }
        CHECK(i == first.size());
    }

    TEST_CASE("randomtree default shape: 6 features, 10 classes, all classes appear") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::randomtree;
        spec.length = 200000;
        const StreamSpec s = spec.stream_spec();
        CHECK(s.dimensionality == 6);
        CHECK(s.num_classes == 10);
        const auto data = generate(spec);
        std::set<Label> seen;
        for (const auto& x : data) {
            seen.insert(*x.label);
            CHECK(x.features.size() == 6);
        }
        CHECK(seen.size() == 10);
    }

    TEST_CASE("a depth-1 tree splits on exactly one attribute") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::randomtree;
        spec.tree_depth = 1;
        spec.num_classes = 2;
        spec.length = 2000;
        RandomTreeGenerator gen(spec);
        REQUIRE(gen.nodes().size() == 3);
        const auto& root = gen.nodes()[0];
        REQUIRE(root.attribute >= 0);
        while (auto x = gen.next()) {
            const Label expected =
                x->features[static_cast<std::size_t>(root.attribute)] <= root.threshold
                    ? gen.nodes()[static_cast<std::size_t>(root.left)].leaf_class
                    : gen.nodes()[static_cast<std::size_t>(root.right)].leaf_class;
            CHECK(*x->label == expected);
        }
    }

    TEST_CASE("randomtree labels replay exactly through an independent tree walk") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::randomtree;
        spec.length = 5000;
        spec.seed = 3;
        RandomTreeGenerator gen(spec);

        // independent walk over the published node table
        const auto& nodes = gen.nodes();
        auto oracle = [&](const std::vector<double>& f) {
            std::size_t id = 0;
            while (nodes[id].attribute >= 0)
                id = static_cast<std::size_t>(
                    f[static_cast<std::size_t>(nodes[id].attribute)] <= nodes[id].threshold
                        ? nodes[id].left
                        : nodes[id].right);
            return nodes[id].leaf_class;
        };
        while (auto x = gen.next()) CHECK(*x->label == oracle(x->features));
    }
}
