#include "doctest.h"

#include "streambench/baselines.hpp"
#include "streambench/mcnn.hpp"
#include "streambench/mondrian.hpp"
#include "streambench/naive_bayes.hpp"

using namespace streambench;

namespace {
Instance labeled(std::vector<double> f, Label y) { return Instance(std::move(f), y); }
}  // namespace

TEST_SUITE("core contract") {
    TEST_CASE("empty classifier predicts class 0 and trains as a no-op") {
        StreamSpec spec{3, 4, 0};
        EmptyClassifier empty(spec);
        CHECK(empty.predict(Instance({0.1, 0.2, 0.3})) == 0);
        CHECK(empty.predict(Instance({9.0, -9.0, 0.0})) == 0);
        empty.train(labeled({1.0, 2.0, 3.0}, 2));
        CHECK(empty.predict(Instance({1.0, 2.0, 3.0})) == 0);
        CHECK(empty.memory_bytes() == 0);
    }

    TEST_CASE("dimensionality is enforced on predict and train") {
        StreamSpec spec{3, 2, 0};
        GaussianNaiveBayes nb(spec);
        CHECK_THROWS_AS(nb.predict(Instance({1.0, 2.0})), ConfigError);
        CHECK_THROWS_AS(nb.train(labeled({1.0, 2.0, 3.0, 4.0}, 0)), ConfigError);
        EmptyClassifier empty(spec);
        CHECK_THROWS_AS(empty.predict(Instance({1.0})), ConfigError);
    }

    TEST_CASE("training an unlabeled instance is a usage error") {
        StreamSpec spec{2, 2, 0};
        GaussianNaiveBayes nb(spec);
        CHECK_THROWS_AS(nb.train(Instance({1.0, 2.0})), UsageError);
        EmptyClassifier empty(spec);
        CHECK_THROWS_AS(empty.train(Instance({1.0, 2.0})), UsageError);
    }

    TEST_CASE("predict is pure: repeated calls agree and do not disturb training") {
        StreamSpec spec{2, 3, 0};
        const std::vector<Instance> stream = {
            labeled({0.1, 0.9}, 0), labeled({0.8, 0.2}, 1), labeled({0.5, 0.5}, 2),
            labeled({0.2, 0.7}, 0), labeled({0.9, 0.1}, 1),
        };
        const Instance probe({0.4, 0.6});

        GaussianNaiveBayes once(spec), twice(spec);
        for (const Instance& x : stream) {
            (void)once.predict(probe);
            once.train(x);
            const Label a = twice.predict(probe);
            const Label b = twice.predict(probe);
            CHECK(a == b);
            twice.train(x);
        }
        CHECK(once.predict(probe) == twice.predict(probe));
        for (int c = 0; c < spec.num_classes; ++c)
            for (int f = 0; f < spec.dimensionality; ++f) {
                CHECK(once.estimator(c, f).mean == twice.estimator(c, f).mean);
                CHECK(once.estimator(c, f).m2 == twice.estimator(c, f).m2);
            }
    }

    TEST_CASE("untrained classifiers default to class 0") {
        StreamSpec spec{2, 5, 0};
        GaussianNaiveBayes nb(spec);
        CHECK(nb.predict(Instance({3.0, 4.0})) == 0);
        McnnClassifier mcnn(spec, McnnParams{});
        CHECK(mcnn.predict(Instance({3.0, 4.0})) == 0);
        MondrianForest mf(spec, MondrianParams{}, 7);
        CHECK(mf.predict(Instance({3.0, 4.0})) == 0);
    }

    TEST_CASE("NB trained only on one class always predicts it") {
        StreamSpec spec{2, 9, 0};
        GaussianNaiveBayes nb(spec);
        nb.train(labeled({0.5, 0.5}, 7));
        nb.train(labeled({0.6, 0.4}, 7));
        CHECK(nb.predict(Instance({100.0, -3.0})) == 7);
    }

    TEST_CASE("labels outside the configured range are rejected") {
        StreamSpec spec{1, 3, 0};
        GaussianNaiveBayes nb(spec);
        CHECK_THROWS_AS(nb.train(labeled({1.0}, 3)), DataError);
        CHECK_THROWS_AS(nb.train(labeled({1.0}, -1)), DataError);
    }

    TEST_CASE("memory accounting of the fixed-size records") {
        // MCNN: 8 clusters x 12 features -> 8 x (2*12*8 + 5*4)
        CHECK(mcnn_cluster_record_bytes(12) == 2 * 12 * 8 + 5 * 4);
        StreamSpec spec{12, 2, 0};
        McnnParams params;
        params.max_clusters = 16;
        McnnClassifier mcnn(spec, params);
        Rng rng(3);
        for (int i = 0; i < 200; ++i) {
            std::vector<double> f(12);
            for (double& v : f) v = rng.uniform();
            const Label y = static_cast<Label>(i % 2);
            for (double& v : f) v += y * 5.0;
            mcnn.train(labeled(std::move(f), y));
        }
        CHECK(mcnn.memory_bytes() ==
              mcnn.clusters().size() * mcnn_cluster_record_bytes(12));

        // Mondrian reports the configured arena budget from construction on
        StreamSpec mf_spec{3, 2, 0};
        MondrianParams mp;
        mp.memory_bytes = 600 * 1024;
        MondrianForest mf(mf_spec, mp, 11);
        CHECK(mf.memory_bytes() == 600 * 1024);
        mf.train(labeled({0.1, 0.2, 0.3}, 0));
        mf.train(labeled({0.9, 0.8, 0.7}, 1));
        CHECK(mf.memory_bytes() == 600 * 1024);
    }
}
