#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lmpipe/modules.hpp"

namespace lmpipe {

// Retrieval-augmented answering: retrieve passages for the question, then
// answer with a chain of thought over (context, question).
class RagProgram final : public Module {
public:
    explicit RagProgram(int num_passages = 3);
    Prediction forward(ExecutionContext& context, const FieldMap& inputs) override;
    std::shared_ptr<Module> fresh_clone() const override;

private:
    int num_passages_;
    std::shared_ptr<Retrieve> retrieve_;
    std::shared_ptr<ChainOfThought> generate_answer_;
};

// Iterative retrieval: each hop generates a search query from the context so
// far, retrieves more passages, and the final hop answers.
class BasicMultiHopProgram final : public Module {
public:
    explicit BasicMultiHopProgram(int passages_per_hop = 3, int hops = 2);
    Prediction forward(ExecutionContext& context, const FieldMap& inputs) override;
    std::shared_ptr<Module> fresh_clone() const override;

    int hops() const { return hops_; }
    int passages_per_hop() const { return passages_per_hop_; }

private:
    int passages_per_hop_;
    int hops_;
    std::shared_ptr<Retrieve> retrieve_;
    std::shared_ptr<ChainOfThought> generate_query_;
    std::shared_ptr<ChainOfThought> generate_answer_;
};

// Samples several reasoning chains for the question, then reconciles them
// into one answer.
class ThoughtReflectionProgram final : public Module {
public:
    explicit ThoughtReflectionProgram(int num_attempts = 5);
    Prediction forward(ExecutionContext& context, const FieldMap& inputs) override;
    std::shared_ptr<Module> fresh_clone() const override;

private:
    int num_attempts_;
    std::shared_ptr<ChainOfThought> predict_;
    std::shared_ptr<MultiChainComparison> compare_;
};

std::shared_ptr<Module> make_vanilla();
std::shared_ptr<Module> make_cot();
std::shared_ptr<Module> make_thought_reflection(int num_attempts = 5);
std::shared_ptr<Module> make_rag(int num_passages = 3);
std::shared_ptr<Module> make_basic_multihop(int passages_per_hop = 3, int hops = 2);
std::shared_ptr<Module> make_react(int k = 1, int max_iters = 5);

// Static table of the shipped programs plus a hook for user programs.
class ProgramRegistry {
public:
    using Factory = std::function<std::shared_ptr<Module>()>;

    static ProgramRegistry& global();

    std::shared_ptr<Module> create(const std::string& name) const;
    void add(const std::string& name, Factory factory);
    std::vector<std::string> names() const;

private:
    std::map<std::string, Factory> factories_;
};

} // namespace lmpipe
