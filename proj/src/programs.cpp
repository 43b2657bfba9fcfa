#include "lmpipe/programs.hpp"

#include "lmpipe/error.hpp"
#include "lmpipe/util.hpp"

namespace lmpipe {

RagProgram::RagProgram(int num_passages) : num_passages_(num_passages) {
    retrieve_ = std::make_shared<Retrieve>(num_passages_);
    generate_answer_ =
        std::make_shared<ChainOfThought>(Signature::parse("context, question -> answer"));
    register_module("retrieve", retrieve_);
    register_module("generate_answer", generate_answer_);
}

Prediction RagProgram::forward(ExecutionContext& context, const FieldMap& inputs) {
    const std::string& question = inputs.get("question");
    const auto retrieved = retrieve_->retrieve(context, question);
    const std::string passage_context = format_passages(retrieved.passages);

    Prediction prediction = generate_answer_->forward(
        context, FieldMap{{"context", passage_context}, {"question", question}});
    prediction.attach("context", passage_context);
    return prediction;
}

std::shared_ptr<Module> RagProgram::fresh_clone() const {
    return std::make_shared<RagProgram>(num_passages_);
}

BasicMultiHopProgram::BasicMultiHopProgram(int passages_per_hop, int hops)
    : passages_per_hop_(passages_per_hop), hops_(hops) {
    if (hops_ < 1) throw ConfigError("BasicMultiHop requires at least one hop");
    retrieve_ = std::make_shared<Retrieve>(passages_per_hop_);
    generate_query_ =
        std::make_shared<ChainOfThought>(Signature::parse("context, question -> search_query"));
    generate_answer_ =
        std::make_shared<ChainOfThought>(Signature::parse("context, question -> answer"));
    register_module("retrieve", retrieve_);
    register_module("generate_query", generate_query_);
    register_module("generate_answer", generate_answer_);
}

Prediction BasicMultiHopProgram::forward(ExecutionContext& context, const FieldMap& inputs) {
    const std::string& question = inputs.get("question");
    std::vector<std::string> passages;

    for (int hop = 0; hop < hops_; ++hop) {
        const Prediction hop_prediction = generate_query_->forward(
            context,
            FieldMap{{"context", format_passages(passages)}, {"question", question}});
        const std::string query = hop_prediction.get("search_query");
        const auto retrieved = retrieve_->retrieve(context, query);
        passages.insert(passages.end(), retrieved.passages.begin(), retrieved.passages.end());
    }

    const std::string passage_context = format_passages(passages);
    Prediction prediction = generate_answer_->forward(
        context, FieldMap{{"context", passage_context}, {"question", question}});
    prediction.attach("context", passage_context);
    return prediction;
}

std::shared_ptr<Module> BasicMultiHopProgram::fresh_clone() const {
    return std::make_shared<BasicMultiHopProgram>(passages_per_hop_, hops_);
}

ThoughtReflectionProgram::ThoughtReflectionProgram(int num_attempts)
    : num_attempts_(num_attempts) {
    GenerationConfig sampling;
    sampling.n = num_attempts_;
    sampling.temperature = 0.7;
    predict_ =
        std::make_shared<ChainOfThought>(Signature::parse("question -> answer"), sampling);
    compare_ = std::make_shared<MultiChainComparison>(Signature::parse("question -> answer"),
                                                      num_attempts_);
    register_module("predict", predict_);
    register_module("compare", compare_);
}

Prediction ThoughtReflectionProgram::forward(ExecutionContext& context, const FieldMap& inputs) {
    const Prediction sampled = predict_->forward(context, inputs);
    return compare_->forward_with_attempts(context, inputs, sampled.completions);
}

std::shared_ptr<Module> ThoughtReflectionProgram::fresh_clone() const {
    return std::make_shared<ThoughtReflectionProgram>(num_attempts_);
}

std::shared_ptr<Module> make_vanilla() {
    return std::make_shared<Predict>(Signature::parse("question -> answer"));
}

std::shared_ptr<Module> make_cot() {
    return std::make_shared<ChainOfThought>(Signature::parse("question -> answer"));
}

std::shared_ptr<Module> make_thought_reflection(int num_attempts) {
    return std::make_shared<ThoughtReflectionProgram>(num_attempts);
}

std::shared_ptr<Module> make_rag(int num_passages) {
    return std::make_shared<RagProgram>(num_passages);
}

std::shared_ptr<Module> make_basic_multihop(int passages_per_hop, int hops) {
    return std::make_shared<BasicMultiHopProgram>(passages_per_hop, hops);
}

std::shared_ptr<Module> make_react(int k, int max_iters) {
    auto retrieve = std::make_shared<Retrieve>(k);
    std::vector<ToolSpec> tools{ReAct::search_tool(retrieve)};
    return std::make_shared<ReAct>(Signature::parse("question -> answer"), std::move(tools),
                                   max_iters);
}

ProgramRegistry& ProgramRegistry::global() {
    static ProgramRegistry registry = [] {
        ProgramRegistry r;
        r.add("vanilla", [] { return make_vanilla(); });
        r.add("cot", [] { return make_cot(); });
        r.add("thought_reflection", [] { return make_thought_reflection(); });
        r.add("rag", [] { return make_rag(); });
        r.add("basic_multihop", [] { return make_basic_multihop(); });
        r.add("react", [] { return make_react(); });
        // Reserved: requires a sandboxed code interpreter.
        r.add("program_of_thought", []() -> std::shared_ptr<Module> {
            throw ConfigError("program 'program_of_thought' is reserved and not available");
        });
        return r;
    }();
    return registry;
}

std::shared_ptr<Module> ProgramRegistry::create(const std::string& name) const {
    const auto it = factories_.find(name);
    if (it == factories_.end()) {
        throw ConfigError("unknown program '" + name + "'; available: " +
                          strings::join(names(), ", "));
    }
    return it->second();
}

void ProgramRegistry::add(const std::string& name, Factory factory) {
    factories_[name] = std::move(factory);
}

std::vector<std::string> ProgramRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, factory] : factories_) out.push_back(name);
    return out;
}

} // namespace lmpipe
