"use strict";

const sessionId = sessionStorage.getItem("litgate-session") || crypto.randomUUID();
sessionStorage.setItem("litgate-session", sessionId);

const log = document.getElementById("log");
const card = document.getElementById("card");
const panel = document.getElementById("panel");
const composer = document.getElementById("composer");
const textBox = document.getElementById("text");
const sendButton = document.getElementById("send");

let pending = null;

function bubble(cls, text) {
  const div = document.createElement("div");
  div.className = "bubble " + cls;
  div.textContent = text;
  log.appendChild(div);
  div.scrollIntoView({ block: "end" });
}

function setComposerEnabled(enabled) {
  textBox.disabled = !enabled;
  sendButton.disabled = !enabled;
}

async function post(path, body) {
  const res = await fetch(path, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const data = await res.json().catch(() => ({ message: res.statusText }));
  if (!res.ok) throw new Error(data.message || data.error || res.statusText);
  return data;
}

function showInline(interventions) {
  for (const i of interventions) {
    if (i.kind === "prompt_hint") bubble("hint", i.message);
    else if (i.kind === "transparency_note") bubble("note", i.message);
  }
}

function renderOutcome(outcome, userText) {
  if (outcome.outcome === "forwarded") {
    if (userText !== undefined) bubble("user", userText);
    bubble("assistant", outcome.assistant_text);
    showInline(outcome.interventions);
    closeCard();
  } else {
    openCard(outcome, userText);
  }
}

function closeCard() {
  pending = null;
  card.hidden = true;
  card.replaceChildren();
  setComposerEnabled(true);
}

function openCard(outcome, userText) {
  pending = { id: outcome.pending_id, text: userText };
  card.replaceChildren();
  for (const i of outcome.interventions) {
    if (i.kind === "crisis_referral") {
      const box = document.createElement("div");
      box.className = "referral";
      const p = document.createElement("p");
      p.textContent = i.message;
      box.appendChild(p);
      const ul = document.createElement("ul");
      for (const link of i.referral_links) {
        const li = document.createElement("li");
        const a = document.createElement("a");
        a.href = link.url;
        a.target = "_blank";
        a.rel = "noopener";
        a.textContent = link.name + (link.region ? " (" + link.region + ")" : "");
        li.appendChild(a);
        ul.appendChild(li);
      }
      box.appendChild(ul);
      card.appendChild(box);
    } else if (i.kind === "disclosure_reflection") {
      const p = document.createElement("p");
      p.textContent = i.message;
      card.appendChild(p);
      for (const opt of i.options) card.appendChild(optionButton(opt));
    } else if (i.kind === "prompt_hint") {
      const p = document.createElement("p");
      p.className = "hint";
      p.textContent = i.message;
      card.appendChild(p);
    }
  }
  card.hidden = false;
  setComposerEnabled(false);
}

function optionButton(opt) {
  const b = document.createElement("button");
  b.type = "button";
  b.textContent = opt.label;
  b.addEventListener("click", () => {
    if (opt.action === "continue") {
      decide({ action: "continue" }, pending.text);
    } else {
      // Rephrasing goes back through the composer so the user confirms the wording.
      textBox.value = opt.action === "rephrase_with" ? opt.text : pending.text;
      textBox.disabled = false;
      sendButton.disabled = false;
      textBox.focus();
      pending.rephrasing = true;
    }
  });
  return b;
}

async function decide(body, shownText) {
  try {
    const outcome = await post("/v1/decision", {
      session_id: sessionId,
      pending_id: pending.id,
      ...body,
    });
    renderOutcome(outcome, shownText);
  } catch (e) {
    bubble("error", e.message);
  }
}

composer.addEventListener("submit", async (ev) => {
  ev.preventDefault();
  const text = textBox.value;
  if (!text.trim()) return;
  if (pending && pending.rephrasing) {
    textBox.value = "";
    await decide({ action: "rephrase", text }, text);
    return;
  }
  if (pending) return;
  setComposerEnabled(false);
  try {
    const outcome = await post("/v1/chat", { session_id: sessionId, text });
    textBox.value = "";
    renderOutcome(outcome, text);
  } catch (e) {
    bubble("error", e.message);
    setComposerEnabled(true);
  }
});

document.getElementById("about").addEventListener("click", async () => {
  if (!panel.hidden) {
    panel.hidden = true;
    return;
  }
  const res = await fetch("/v1/transparency");
  const data = await res.json();
  panel.replaceChildren();
  for (const note of data.notes) {
    const p = document.createElement("p");
    p.textContent = note.message;
    panel.appendChild(p);
  }
  panel.hidden = false;
});
