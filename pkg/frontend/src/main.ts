/** DOM bootstrap: session wiring, pointer capture, sampling loop. */

import { ServiceClient } from "./client.js";
import { PadController } from "./controller.js";
import { renderPad } from "./render.js";

const serviceBase = `${location.protocol}//${location.host}`;

async function start(): Promise<void> {
  const canvas = document.getElementById("pad") as HTMLCanvasElement;
  const writeBtn = document.getElementById("pose-write") as HTMLButtonElement;
  const clearBtn = document.getElementById("pose-clear") as HTMLButtonElement;
  const status = document.getElementById("status") as HTMLElement;

  const controller = new PadController(new ServiceClient(serviceBase));
  await controller.open();

  writeBtn.addEventListener("click", () => void controller.setPose(1));
  clearBtn.addEventListener("click", () => void controller.setPose(5));
  window.addEventListener("keydown", (e) => {
    if (e.key === "w") void controller.setPose(1);
    if (e.key === "c") void controller.setPose(5);
  });

  const toLocal = (e: PointerEvent): [number, number] => {
    const r = canvas.getBoundingClientRect();
    return [e.clientX - r.left, e.clientY - r.top];
  };
  canvas.addEventListener("pointerdown", (e) => {
    canvas.setPointerCapture(e.pointerId);
    controller.pointerDown(...toLocal(e));
  });
  canvas.addEventListener("pointermove", (e) => controller.pointerMove(...toLocal(e)));
  canvas.addEventListener("pointerup", () => controller.pointerUp());
  canvas.addEventListener("pointercancel", () => controller.pointerUp());

  window.setInterval(() => controller.tick(), 1000 / controller.sampleRateHz);
  window.setInterval(() => void controller.reconnect(), 1500);

  const loop = (): void => {
    const model = controller.renderModel();
    renderPad(canvas, model);
    status.textContent = `${model.phase}${model.offline ? " · offline" : ""}`;
    requestAnimationFrame(loop);
  };
  requestAnimationFrame(loop);
}

void start();
