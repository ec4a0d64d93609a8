/** Canvas rendering of the pad state: raw stroke, server-smoothed
 * overlay, phase badge, velocity gauge, ranked labels. */

import { RenderModel } from "./controller.js";
import { TrajPoint } from "./client.js";

function drawPolyline(
  ctx: CanvasRenderingContext2D,
  points: TrajPoint[],
  style: string,
  width: number,
  dashed = false,
): void {
  if (points.length < 2) return;
  ctx.save();
  ctx.strokeStyle = style;
  ctx.lineWidth = width;
  ctx.lineJoin = "round";
  ctx.lineCap = "round";
  if (dashed) ctx.setLineDash([6, 5]);
  ctx.beginPath();
  ctx.moveTo(points[0].x, points[0].y);
  for (const p of points.slice(1)) ctx.lineTo(p.x, p.y);
  ctx.stroke();
  ctx.restore();
}

export function renderPad(
  canvas: HTMLCanvasElement,
  model: RenderModel,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);

  drawPolyline(ctx, model.rawPoints, "#8ecdf7", 3);
  if (model.smoothedPoints) {
    drawPolyline(ctx, model.smoothedPoints, "#ffd166", 2, true);
  }

  // phase badge
  const badgeColor =
    model.phase === "writing" ? "#2a9d8f" : model.phase === "terminated" ? "#e9c46a" : "#6c757d";
  ctx.fillStyle = badgeColor;
  ctx.fillRect(10, 10, 110, 26);
  ctx.fillStyle = "#fff";
  ctx.font = "14px sans-serif";
  ctx.fillText(model.phase, 18, 28);
  if (model.offline) {
    ctx.fillStyle = "#e76f51";
    ctx.fillRect(130, 10, 170, 26);
    ctx.fillStyle = "#fff";
    ctx.fillText(`offline (${model.pendingPoints} buffered)`, 138, 28);
  }

  // velocity vs tau gauge
  const gaugeW = 160;
  const v = Math.min(model.velocity ?? 0, model.tau * 3);
  ctx.fillStyle = "#343a40";
  ctx.fillRect(10, 44, gaugeW, 10);
  ctx.fillStyle = v < model.tau ? "#e9c46a" : "#2a9d8f";
  ctx.fillRect(10, 44, (gaugeW * v) / (model.tau * 3), 10);
  ctx.strokeStyle = "#e76f51";
  const tauX = 10 + gaugeW / 3;
  ctx.beginPath();
  ctx.moveTo(tauX, 40);
  ctx.lineTo(tauX, 58);
  ctx.stroke();

  // ranked labels
  if (model.result && !model.result.rejected) {
    ctx.fillStyle = "#fff";
    ctx.font = "16px monospace";
    model.result.ranked.slice(0, 5).forEach((r, i) => {
      ctx.fillText(`${r.label}  ${r.score.toFixed(3)}`, 10, 84 + 20 * i);
    });
  }
  ctx.fillStyle = "#ced4da";
  ctx.font = "13px sans-serif";
  ctx.fillText(model.prompt, 10, canvas.height - 12);
}
