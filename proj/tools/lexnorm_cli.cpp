// lexnorm: batch driver for lexical-variant discovery in noisy corpora.
//
// Subcommands: preprocess, encode, learn-costs, cluster, evaluate, tune,
// synth. Every flag can also be set through an INI-style config file
// (key = value, one section per subcommand); explicit flags win.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "lexnorm/alignment.hpp"
#include "lexnorm/pipeline.hpp"
#include "lexnorm/synth.hpp"
#include "lexnorm/tuner.hpp"

namespace {

using namespace lexnorm;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Error::Kind::io, "cannot write output: " + path);
    return out;
}

std::vector<Message> load_corpus(const std::string& path, const std::string& commands_path) {
    PreprocessOptions options;
    if (!commands_path.empty()) options.command_patterns = load_pattern_list(commands_path);
    const auto lines = read_lines(path);
    return preprocess(lines, options);
}

FeatureWeights parse_weights(const std::string& csv) {
    FeatureWeights weights;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error(Error::Kind::config, "weight entries look like name=value: " + item);
        const std::string name = item.substr(0, eq);
        double value = 0;
        try {
            value = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(Error::Kind::config, "bad weight value in: " + item);
        }
        bool known = false;
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            if (name == feature_name(static_cast<Feature>(i))) {
                weights.values[i] = value;
                known = true;
                break;
            }
        }
        if (!known) throw Error(Error::Kind::config, "unknown feature in weights: " + name);
    }
    return weights;
}

// Shared flags for subcommands that run the clustering pipeline.
struct PipelineFlags {
    std::string corpus;
    std::string gold;
    std::string commands;
    std::string features = "phonetic,string,context-word";
    std::string weights;
    double threshold = -1;  // negative = library default by vocabulary size
    std::string init = "urduphone";
    int context_size = 5;
    std::string context_feature = "word";
    std::string algorithm = "lexvar";
    int neighborhood = 10;
    std::uint64_t seed = 1;
    std::string embeddings;
    std::string costs;
    std::string code_table;
    int length = 6;
    bool h_omission = false;
    bool digraphs = false;
    int min_context = 1;
    int workers = 1;
    double epsilon = 0.001;
    int max_iters = 100;

    void add_to(CLI::App& cmd, bool with_gold) {
        cmd.add_option("corpus", corpus, "corpus file, one message per line")->required();
        if (with_gold) cmd.add_option("--gold", gold, "gold standard TSV (surface<TAB>group)");
        cmd.add_option("--commands", commands, "command-pattern removal list");
        cmd.add_option("--features", features, "comma list: phonetic,string,context-word,context-phone,embedding,skipgram");
        cmd.add_option("--weights", weights, "comma list of name=value feature weights");
        cmd.add_option("--threshold", threshold, "similarity threshold t in [0,1]");
        cmd.add_option("--init", init, "initial clusters: urduphone or random[:count]");
        cmd.add_option("--context-size", context_size, "top-k context size");
        cmd.add_option("--context-feature", context_feature,
                       "word-id channel feature: word or cluster");
        cmd.add_option("--algorithm", algorithm, "lexvar or hierarchical");
        cmd.add_option("--neighborhood", neighborhood, "hierarchical neighbourhood size");
        cmd.add_option("--seed", seed, "seed for random initialisation");
        cmd.add_option("--embeddings", embeddings, "embedding text file");
        cmd.add_option("--costs", costs, "edit cost TSV");
        cmd.add_option("--code-table", code_table, "phonetic code table TSV override");
        cmd.add_option("--length", length, "encoding length (4..8)");
        cmd.add_flag("--h-omission", h_omission, "skip h after a consonant");
        cmd.add_flag("--digraphs", digraphs, "digraph-aware encoding");
        cmd.add_option("--min-context", min_context, "context floor for evaluation words");
        cmd.add_option("--workers", workers, "worker threads (output-invariant)");
        cmd.add_option("--epsilon", epsilon, "stop when changed fraction drops below");
        cmd.add_option("--max-iters", max_iters, "iteration cap");
    }

    PipelineConfig build(std::unique_ptr<CostMatrix>& costs_holder,
                         std::unique_ptr<EmbeddingTable>& embeddings_holder) const {
        PipelineConfig config;
        config.encoder.length = length;
        config.encoder.h_omission = h_omission;
        config.encoder.digraphs = digraphs;
        if (!code_table.empty()) config.code_table = CodeTable::load_tsv(code_table);
        config.context_k = context_size;
        if (context_feature == "word")
            config.word_channel = ContextFeature::word_id;
        else if (context_feature == "cluster")
            config.word_channel = ContextFeature::cluster_id;
        else
            throw Error(Error::Kind::config, "context feature must be word or cluster");
        config.features = parse_feature_set(features);
        if (!weights.empty()) config.weights = parse_weights(weights);
        if (threshold >= 0) config.threshold = threshold;
        if (init == "urduphone") {
            config.init = PipelineConfig::Init::urduphone;
        } else if (init.rfind("random", 0) == 0) {
            config.init = PipelineConfig::Init::random;
            const auto colon = init.find(':');
            if (colon != std::string::npos)
                config.random_count = std::stoul(init.substr(colon + 1));
        } else {
            throw Error(Error::Kind::config, "init must be urduphone or random[:count]");
        }
        config.algorithm = [&] {
            if (algorithm == "lexvar") return PipelineConfig::Algorithm::lexvar;
            if (algorithm == "hierarchical") return PipelineConfig::Algorithm::hierarchical;
            throw Error(Error::Kind::config, "algorithm must be lexvar or hierarchical");
        }();
        config.neighborhood = neighborhood;
        config.seed = seed;
        config.min_context = min_context;
        config.workers = workers;
        config.stop.epsilon = epsilon;
        config.stop.max_iters = max_iters;
        if (!costs.empty()) {
            costs_holder = std::make_unique<CostMatrix>(CostMatrix::load_tsv(costs));
            config.costs = costs_holder.get();
        }
        if (!embeddings.empty()) {
            embeddings_holder = std::make_unique<EmbeddingTable>(EmbeddingTable::load(embeddings));
            config.embeddings = embeddings_holder.get();
        }
        return config;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"lexical variant discovery for non-standardized corpora"};
    app.require_subcommand(1);
    app.set_config("--config");

    // preprocess
    auto* pre = app.add_subcommand("preprocess", "clean a raw corpus");
    std::string pre_in, pre_out, pre_commands;
    pre->add_option("corpus", pre_in, "raw corpus file")->required();
    pre->add_option("-o,--output", pre_out, "cleaned corpus (default stdout)");
    pre->add_option("--commands", pre_commands, "command-pattern removal list");

    // encode
    auto* enc = app.add_subcommand("encode", "phonetic encodings for a file's tokens");
    std::string enc_in, enc_out, enc_scheme = "urduphone", enc_table;
    int enc_length = 6;
    bool enc_h = false, enc_digraphs = false;
    enc->add_option("corpus", enc_in, "token file (whitespace separated)")->required();
    enc->add_option("-o,--output", enc_out, "encoding TSV (default stdout)");
    enc->add_option("--scheme", enc_scheme, "urduphone or soundex");
    enc->add_option("--length", enc_length, "encoding length (4..8)");
    enc->add_flag("--h-omission", enc_h, "skip h after a consonant");
    enc->add_flag("--digraphs", enc_digraphs, "digraph-aware encoding");
    enc->add_option("--code-table", enc_table, "code table TSV override");

    // learn-costs
    auto* learn = app.add_subcommand("learn-costs", "edit costs from EM character alignment");
    std::string learn_in, learn_out, learn_commands;
    int learn_neighborhood = 100, learn_iters = 10, learn_context = 5;
    learn->add_option("corpus", learn_in, "corpus file")->required();
    learn->add_option("-o,--output", learn_out, "cost TSV (default stdout)");
    learn->add_option("--neighborhood", learn_neighborhood, "closest words per word");
    learn->add_option("--em-iters", learn_iters, "EM iterations");
    learn->add_option("--context-size", learn_context, "context size for the pairing similarity");
    learn->add_option("--commands", learn_commands, "command-pattern removal list");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "run the clustering pipeline");
    PipelineFlags cluster_flags;
    std::string cluster_out;
    cluster_flags.add_to(*cluster, true);
    cluster->add_option("-o,--output", cluster_out, "clustering TSV (default stdout)");

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "BCubed scores for a clustering");
    std::string eval_pred, eval_gold, eval_corpus, eval_commands;
    int eval_min_context = 0, eval_context_size = 5;
    bool eval_tsv = false;
    eval->add_option("--pred", eval_pred, "clustering TSV")->required();
    eval->add_option("--gold", eval_gold, "gold standard TSV")->required();
    eval->add_option("--corpus", eval_corpus, "corpus (required when --min-context > 0)");
    eval->add_option("--min-context", eval_min_context, "context floor for evaluation words");
    eval->add_option("--context-size", eval_context_size, "top-k context size");
    eval->add_option("--commands", eval_commands, "command-pattern removal list");
    eval->add_flag("--tsv", eval_tsv, "append a machine-readable row");

    // tune
    auto* tune = app.add_subcommand("tune", "cross-validated parameter search");
    PipelineFlags tune_flags;
    int tune_folds = 10;
    std::uint64_t tune_seed = 42;
    std::string tune_search = "both";
    int tune_evals = 40;
    tune_flags.add_to(*tune, true);
    tune->add_option("--folds", tune_folds, "cross-validation folds");
    tune->add_option("--tune-seed", tune_seed, "fold split seed");
    tune->add_option("--search", tune_search, "weights, threshold, or both");
    tune->add_option("--nm-evals", tune_evals, "objective evaluations per fold");

    // synth
    auto* synth = app.add_subcommand("synth", "generate the synthetic fixture corpus");
    std::string synth_out = "synth_corpus.txt", synth_gold = "synth_gold.tsv";
    SynthOptions synth_options;
    synth->add_option("-o,--output", synth_out, "corpus output path");
    synth->add_option("--gold-out", synth_gold, "gold standard output path");
    synth->add_option("--seed", synth_options.seed, "generator seed");
    synth->add_option("--groups", synth_options.groups, "gold group count");
    synth->add_option("--variants-min", synth_options.variants_min, "min variants per group");
    synth->add_option("--variants-max", synth_options.variants_max, "max variants per group");
    synth->add_option("--twin-pct", synth_options.twin_pct, "share of same-skeleton twin groups");
    synth->add_option("--sentences-per-variant", synth_options.sentences_per_variant,
                      "sentences per variant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    if (pre->parsed()) {
        const auto messages = load_corpus(pre_in, pre_commands);
        if (pre_out.empty()) {
            write_messages(std::cout, messages);
        } else {
            auto out = open_output(pre_out);
            write_messages(out, messages);
        }
        return 0;
    }

    if (enc->parsed()) {
        Vocabulary vocab;
        for (const auto& line : read_lines(enc_in)) {
            std::istringstream split(line);
            std::string token;
            while (split >> token) {
                for (char& c : token)
                    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
                vocab.add(token);
            }
        }
        std::function<std::string(std::string_view)> encode_fn;
        if (enc_scheme == "soundex") {
            encode_fn = [](std::string_view w) { return soundex_encode(w); };
        } else if (enc_scheme == "urduphone") {
            UrduPhoneOptions options{enc_length, enc_h, enc_digraphs};
            CodeTable table =
                enc_table.empty() ? CodeTable::roman_urdu() : CodeTable::load_tsv(enc_table);
            encode_fn = [encoder = UrduPhoneEncoder(options, std::move(table))](
                            std::string_view w) { return encoder.encode(w); };
        } else {
            throw Error(Error::Kind::config, "scheme must be urduphone or soundex");
        }
        std::ostringstream body;
        for (WordId w = 0; w < vocab.size(); ++w) {
            std::string code;
            try {
                code = encode_fn(vocab[w].surface);
            } catch (const Error& e) {
                if (e.kind() != Error::Kind::unencodable) throw;
                code = "-";
            }
            body << vocab[w].surface << '\t' << code << '\n';
        }
        if (enc_out.empty()) {
            std::cout << body.str();
        } else {
            open_output(enc_out) << body.str();
        }
        return 0;
    }

    if (learn->parsed()) {
        const auto messages = load_corpus(learn_in, learn_commands);
        Vocabulary vocab = build_vocabulary(messages);
        if (vocab.size() < 2)
            throw Error(Error::Kind::empty_input, "need at least two words to learn costs");
        extract_contexts(messages, vocab, learn_context, ContextFeature::word_id);
        const VocabEncodings encodings = encode_vocabulary(vocab, UrduPhoneEncoder());

        SimilarityEngine::Config engine_config;
        engine_config.features = {Feature::phonetic, Feature::string_sim, Feature::context_word};
        engine_config.context_k = learn_context;
        const SimilarityEngine engine(vocab, engine_config, &encodings);

        if (learn_neighborhood >= static_cast<int>(vocab.size())) {
            std::cerr << "warning: neighbourhood clamped to vocabulary size - 1\n";
        }
        const auto pairs = candidate_pairs(
            vocab.all_ids(), [&](WordId a, WordId b) { return engine.similarity(a, b); },
            learn_neighborhood);
        EmOptions em;
        em.iterations = learn_iters;
        const CharAlignmentTable table = em_align(pairs, vocab, em);
        const CostMatrix costs = costs_from_alignment(table);
        if (learn_out.empty()) {
            costs.save_tsv(std::cout);
        } else {
            costs.save_tsv(learn_out);
        }
        return 0;
    }

    if (cluster->parsed()) {
        const auto messages = load_corpus(cluster_flags.corpus, cluster_flags.commands);
        std::unique_ptr<CostMatrix> costs;
        std::unique_ptr<EmbeddingTable> embeddings;
        const PipelineConfig config = cluster_flags.build(costs, embeddings);
        std::optional<GoldStandard> gold;
        if (!cluster_flags.gold.empty()) gold = GoldStandard::load_tsv(cluster_flags.gold);

        const PipelineResult result =
            run_pipeline(messages, gold ? &*gold : nullptr, config);
        if (cluster_out.empty()) {
            save_clustering_tsv(std::cout, result.clustering, result.vocab);
        } else {
            auto out = open_output(cluster_out);
            save_clustering_tsv(out, result.clustering, result.vocab);
        }
        if (result.report) write_report(std::cout, *result.report);
        return 0;
    }

    if (eval->parsed()) {
        Vocabulary vocab;
        const Clustering pred = load_clustering_tsv(eval_pred, vocab);
        const GoldStandard gold = GoldStandard::load_tsv(eval_gold);

        std::vector<WordId> eval_set;
        if (eval_min_context > 0) {
            if (eval_corpus.empty())
                throw Error(Error::Kind::config, "--min-context needs --corpus for context counts");
            const auto messages = load_corpus(eval_corpus, eval_commands);
            Vocabulary corpus_vocab = build_vocabulary(messages);
            extract_contexts(messages, corpus_vocab, eval_context_size, ContextFeature::word_id);
            const auto filtered = filter_eval_words(corpus_vocab, gold, eval_min_context);
            std::unordered_set<std::string> keep;
            for (WordId w : filtered) keep.insert(corpus_vocab[w].surface);
            for (WordId w = 0; w < vocab.size(); ++w) {
                if (keep.count(vocab[w].surface) && pred.cluster_of(w) >= 0) eval_set.push_back(w);
            }
        } else {
            for (WordId w = 0; w < vocab.size(); ++w) {
                if (gold.group(vocab[w].surface) && pred.cluster_of(w) >= 0) eval_set.push_back(w);
            }
        }
        const EvalReport report = bcubed_eval(pred, gold, eval_set, vocab);
        write_report(std::cout, report, eval_tsv);
        return 0;
    }

    if (tune->parsed()) {
        const auto messages = load_corpus(tune_flags.corpus, tune_flags.commands);
        if (tune_flags.gold.empty())
            throw Error(Error::Kind::config, "tune needs --gold");
        const GoldStandard gold = GoldStandard::load_tsv(tune_flags.gold);
        std::unique_ptr<CostMatrix> costs;
        std::unique_ptr<EmbeddingTable> embeddings;
        const PipelineConfig base = tune_flags.build(costs, embeddings);

        TuneOptions options;
        options.folds = tune_folds;
        options.seed = tune_seed;
        options.nm_max_evals = tune_evals;
        options.search_weights = tune_search == "weights" || tune_search == "both";
        options.search_threshold = tune_search == "threshold" || tune_search == "both";
        if (!options.search_weights && !options.search_threshold && tune_search != "none")
            throw Error(Error::Kind::config, "search must be weights, threshold, both, or none");

        const TuneResult result = optimize_parameters(messages, gold, base, options);
        for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << '\n';
        write_tune_report(std::cout, result, base);
        return 0;
    }

    if (synth->parsed()) {
        const SynthData data = synth_corpus(synth_options);
        auto out = open_output(synth_out);
        for (const auto& line : data.lines) out << line << '\n';
        data.gold.save_tsv(synth_gold);
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lexnorm::Error& e) {
        const char* stage = argc > 1 ? argv[1] : "lexnorm";
        std::cerr << "lexnorm " << stage << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "lexnorm: " << e.what() << '\n';
        return 1;
    }
}
