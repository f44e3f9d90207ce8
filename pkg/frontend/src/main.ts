// Browser entry point: catalog picker plus the session app.

import { ApiClient } from "./api";
import { App } from "./app";

const base = (window as unknown as { CLUSTERMOD_URL?: string }).CLUSTERMOD_URL ?? "http://127.0.0.1:8763";

async function boot(): Promise<void> {
  const api = new ApiClient(base);
  const header = document.getElementById("header")!;
  const select = document.createElement("select");
  select.id = "catalog-select";
  const { names } = await api.catalog();
  for (const name of names) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    select.appendChild(option);
  }
  header.appendChild(select);
  const button = document.createElement("button");
  button.id = "new-session";
  button.textContent = "new session";
  header.appendChild(button);

  const app = new App(document.getElementById("root")!, api);
  button.addEventListener("click", () => void app.start(select.value));
  await app.start("a2");
}

void boot();
